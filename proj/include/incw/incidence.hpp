#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace incw {

// Catalog of incidence functions. Every variant vanishes when s = 0 or i = 0.

/// beta * s * i
struct Bilinear {
  double beta;
  bool operator==(const Bilinear&) const = default;
};

/// beta * s * i / (1 + a i), the Holling-type saturated form
struct Saturated {
  double beta;
  double a;
  bool operator==(const Saturated&) const = default;
};

/// beta * s * i / (1 + a i + b s)
struct BeddingtonDeAngelis {
  double beta;
  double a;
  double b;
  bool operator==(const BeddingtonDeAngelis&) const = default;
};

/// beta * s * i / (s + i + r), taken as 0 when s + i + r = 0
struct StandardIncidence {
  double beta;
  bool operator==(const StandardIncidence&) const = default;
};

/// beta * s * i * (1 + k i)
struct DoubleExposure {
  double beta;
  double k;
  bool operator==(const DoubleExposure&) const = default;
};

class IncidenceSpec {
 public:
  using Variant = std::variant<Bilinear, Saturated, BeddingtonDeAngelis, StandardIncidence, DoubleExposure>;

  /// Throws InvalidInput unless beta > 0 and all other coefficients are >= 0.
  IncidenceSpec(Variant v);

  /// Parses the config form `name:c1,c2,...`, e.g. `saturated:0.4,1.0`.
  /// Names: bilinear, saturated, beddington, standard, double.
  static IncidenceSpec parse(std::string_view text);

  const Variant& variant() const noexcept { return v_; }
  std::string_view name() const noexcept;
  std::vector<double> coefficients() const;
  /// Inverse of parse(); coefficients printed round-trip exact.
  std::string to_string() const;
  /// True for variants whose value depends on r.
  bool depends_on_r() const noexcept { return std::holds_alternative<StandardIncidence>(v_); }

  bool operator==(const IncidenceSpec&) const = default;

 private:
  Variant v_;
};

// Pointwise evaluation. Non-finite arguments throw InvalidInput. Partial derivatives are exact
// and treat the other two arguments as fixed.
double incidence_value(const IncidenceSpec& spec, double s, double i, double r);
double incidence_dS(const IncidenceSpec& spec, double s, double i, double r);
double incidence_dI(const IncidenceSpec& spec, double s, double i, double r);
/// Nonzero only for StandardIncidence. Used by the full R-coupled linearization.
double incidence_dR(const IncidenceSpec& spec, double s, double i, double r);

}  // namespace incw
