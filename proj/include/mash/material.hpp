#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mash {

/// Yeoh strain-energy coefficients. The unit is carried along because the
/// source values are quoted without one.
struct YeohCoefficients {
  double c10 = 2.61;
  double c20 = -0.561;
  double c30 = 0.0972;
  std::string unit = "MPa";
};

/// W = c10 (I1-3) + c20 (I1-3)^2 + c30 (I1-3)^3. Throws DomainError for i1 < 3.
double yeoh_energy(const YeohCoefficients& c, double i1);

/// Cauchy stress for incompressible uniaxial stretch `stretch`.
/// Throws DomainError for stretch <= 0.
double uniaxial_stress(const YeohCoefficients& c, double stretch);

enum class Interpolation { Linear, MonotoneCubic };

struct Anchor {
  double pressure = 0.0;  // kPa
  double length = 0.0;    // mm
};

/// Pressure -> free SPA length, interpolated through measured anchors.
///
/// Anchors must start at 0 kPa and be strictly increasing in both pressure
/// and length. Monotone cubic uses Fritsch-Butland tangents, so the curve
/// never leaves the [min, max] of the bracketing anchors.
class ExtensionLaw {
 public:
  ExtensionLaw(std::vector<Anchor> anchors, Interpolation interpolation);

  /// Monotone cubic for three or more anchors, linear for two.
  static ExtensionLaw with_default_interpolation(std::vector<Anchor> anchors);

  /// (0 kPa, 104 mm) -> (100 kPa, 200.55 mm), linear.
  static ExtensionLaw measured_default();

  /// Throws RangeError outside [0, max_pressure()].
  double length(double pressure) const;

  double max_pressure() const { return anchors_.back().pressure; }
  const std::vector<Anchor>& anchors() const { return anchors_; }
  Interpolation interpolation() const { return interpolation_; }

 private:
  std::vector<Anchor> anchors_;
  Interpolation interpolation_;
  std::vector<double> tangents_;
};

double extension_length(const ExtensionLaw& law, double pressure);

std::vector<std::string> anchor_violations(const std::vector<Anchor>& anchors);

/// Two-column CSV with a header row: pressure_kPa,length_mm.
std::vector<Anchor> read_anchors_csv(std::istream& in);
std::vector<Anchor> read_anchors_csv(const std::filesystem::path& path);

const char* to_string(Interpolation interpolation);
Interpolation interpolation_from_string(const std::string& name);

}  // namespace mash
