#include "mash/material.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mash/errors.hpp"

namespace mash {

double yeoh_energy(const YeohCoefficients& c, double i1) {
  if (!(i1 >= 3.0)) throw DomainError("yeoh_energy: first invariant must be >= 3");
  const double x = i1 - 3.0;
  return x * (c.c10 + x * (c.c20 + x * c.c30));
}

double uniaxial_stress(const YeohCoefficients& c, double stretch) {
  if (!(stretch > 0.0)) throw DomainError("uniaxial_stress: stretch must be > 0");
  const double l = stretch;
  const double x = l * l + 2.0 / l - 3.0;
  const double dw_di1 = c.c10 + 2.0 * c.c20 * x + 3.0 * c.c30 * x * x;
  return 2.0 * (l * l - 1.0 / l) * dw_di1;
}

std::vector<std::string> anchor_violations(const std::vector<Anchor>& anchors) {
  std::vector<std::string> out;
  if (anchors.size() < 2) {
    out.emplace_back("extension law needs at least two anchors");
    return out;
  }
  if (anchors.front().pressure != 0.0) out.emplace_back("first anchor must be at 0 kPa");
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const auto& a = anchors[i];
    if (!std::isfinite(a.pressure) || !std::isfinite(a.length)) {
      out.push_back("anchor " + std::to_string(i) + " is not finite");
      continue;
    }
    if (i == 0) continue;
    if (!(a.pressure > anchors[i - 1].pressure)) {
      out.push_back("anchor " + std::to_string(i) + ": pressure not strictly increasing");
    }
    if (!(a.length > anchors[i - 1].length)) {
      out.push_back("anchor " + std::to_string(i) + ": length not strictly increasing");
    }
  }
  if (!(anchors.front().length > 0.0)) out.emplace_back("rest length must be > 0");
  return out;
}

ExtensionLaw::ExtensionLaw(std::vector<Anchor> anchors, Interpolation interpolation)
    : anchors_(std::move(anchors)), interpolation_(interpolation) {
  if (auto v = anchor_violations(anchors_); !v.empty()) throw ValidationError(std::move(v));

  const std::size_t n = anchors_.size();
  std::vector<double> h(n - 1), secant(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = anchors_[k + 1].pressure - anchors_[k].pressure;
    secant[k] = (anchors_[k + 1].length - anchors_[k].length) / h[k];
  }
  tangents_.assign(n, 0.0);
  tangents_.front() = secant.front();
  tangents_.back() = secant.back();
  // Weighted harmonic mean keeps every tangent within 3x the adjacent secants.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    tangents_[k] = (w1 + w2) / (w1 / secant[k - 1] + w2 / secant[k]);
  }
}

ExtensionLaw ExtensionLaw::with_default_interpolation(std::vector<Anchor> anchors) {
  const auto interp = anchors.size() >= 3 ? Interpolation::MonotoneCubic : Interpolation::Linear;
  return ExtensionLaw(std::move(anchors), interp);
}

ExtensionLaw ExtensionLaw::measured_default() {
  return ExtensionLaw({{0.0, 104.0}, {100.0, 200.55}}, Interpolation::Linear);
}

double ExtensionLaw::length(double pressure) const {
  if (!(pressure >= 0.0 && pressure <= max_pressure())) {
    std::ostringstream msg;
    msg << "pressure " << pressure << " kPa outside extension law range [0, "
        << max_pressure() << "] kPa";
    throw RangeError(msg.str());
  }
  auto upper = std::upper_bound(anchors_.begin(), anchors_.end(), pressure,
                                [](double p, const Anchor& a) { return p < a.pressure; });
  if (upper == anchors_.end()) return anchors_.back().length;
  const std::size_t k = static_cast<std::size_t>(upper - anchors_.begin()) - 1;
  const Anchor& a = anchors_[k];
  const Anchor& b = anchors_[k + 1];
  const double h = b.pressure - a.pressure;
  const double s = (pressure - a.pressure) / h;
  if (s == 0.0) return a.length;
  if (interpolation_ == Interpolation::Linear) return a.length + s * (b.length - a.length);

  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * a.length + h10 * h * tangents_[k] + h01 * b.length + h11 * h * tangents_[k + 1];
}

double extension_length(const ExtensionLaw& law, double pressure) {
  return law.length(pressure);
}

std::vector<Anchor> read_anchors_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError({"anchor CSV is empty (header row required)"});
  {
    std::istringstream header(line);
    std::string first;
    std::getline(header, first, ',');
    char* end = nullptr;
    std::strtod(first.c_str(), &end);
    if (!first.empty() && end != first.c_str()) {
      throw ValidationError({"anchor CSV: first row is numeric, header row required"});
    }
  }
  std::vector<Anchor> anchors;
  std::vector<std::string> errors;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string p, l;
    Anchor a;
    try {
      if (!std::getline(fields, p, ',') || !std::getline(fields, l, ',')) throw std::invalid_argument("");
      a.pressure = std::stod(p);
      a.length = std::stod(l);
    } catch (const std::exception&) {
      errors.push_back("anchor CSV row " + std::to_string(row) + ": expected two numbers");
      continue;
    }
    anchors.push_back(a);
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return anchors;
}

std::vector<Anchor> read_anchors_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot open anchor CSV " + path.string()});
  return read_anchors_csv(in);
}

const char* to_string(Interpolation interpolation) {
  return interpolation == Interpolation::Linear ? "linear" : "monotone-cubic";
}

Interpolation interpolation_from_string(const std::string& name) {
  if (name == "linear") return Interpolation::Linear;
  if (name == "monotone-cubic") return Interpolation::MonotoneCubic;
  throw ValidationError({"unknown interpolation '" + name + "' (linear | monotone-cubic)"});
}

}  // namespace mash
