#include "incw/incidence.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "incw/error.hpp"

namespace incw {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_finite(double s, double i, double r) {
  if (!std::isfinite(s) || !std::isfinite(i) || !std::isfinite(r)) {
    throw InvalidInput("incidence evaluated at a non-finite point");
  }
}

void check_coefficient(double c, bool strictly_positive, std::string_view what) {
  if (!std::isfinite(c) || c < 0.0 || (strictly_positive && c == 0.0)) {
    throw InvalidInput(std::string(what) + (strictly_positive ? " must be > 0" : " must be >= 0"));
  }
}

std::vector<double> parse_coefficients(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw InvalidInput("bad incidence coefficient '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

IncidenceSpec::IncidenceSpec(Variant v) : v_(v) {
  std::visit(Overloaded{
                 [](const Bilinear& f) { check_coefficient(f.beta, true, "beta"); },
                 [](const Saturated& f) {
                   check_coefficient(f.beta, true, "beta");
                   check_coefficient(f.a, false, "a");
                 },
                 [](const BeddingtonDeAngelis& f) {
                   check_coefficient(f.beta, true, "beta");
                   check_coefficient(f.a, false, "a");
                   check_coefficient(f.b, false, "b");
                 },
                 [](const StandardIncidence& f) { check_coefficient(f.beta, true, "beta"); },
                 [](const DoubleExposure& f) {
                   check_coefficient(f.beta, true, "beta");
                   check_coefficient(f.k, false, "k");
                 },
             },
             v_);
}

IncidenceSpec IncidenceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidInput("incidence '" + std::string(text) + "' is missing ':<coefficients>'");
  }
  auto name = text.substr(0, colon);
  while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
  while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
  const auto c = parse_coefficients(text.substr(colon + 1));

  auto arity = [&](std::size_t n) {
    if (c.size() != n) {
      throw InvalidInput("incidence '" + std::string(name) + "' takes " + std::to_string(n) + " coefficient(s), got " +
                         std::to_string(c.size()));
    }
  };
  if (name == "bilinear") {
    arity(1);
    return IncidenceSpec(Bilinear{c[0]});
  }
  if (name == "saturated") {
    arity(2);
    return IncidenceSpec(Saturated{c[0], c[1]});
  }
  if (name == "beddington") {
    arity(3);
    return IncidenceSpec(BeddingtonDeAngelis{c[0], c[1], c[2]});
  }
  if (name == "standard") {
    arity(1);
    return IncidenceSpec(StandardIncidence{c[0]});
  }
  if (name == "double") {
    arity(2);
    return IncidenceSpec(DoubleExposure{c[0], c[1]});
  }
  throw InvalidInput("unknown incidence '" + std::string(name) + "'");
}

std::string_view IncidenceSpec::name() const noexcept {
  return std::visit(Overloaded{
                        [](const Bilinear&) { return std::string_view("bilinear"); },
                        [](const Saturated&) { return std::string_view("saturated"); },
                        [](const BeddingtonDeAngelis&) { return std::string_view("beddington"); },
                        [](const StandardIncidence&) { return std::string_view("standard"); },
                        [](const DoubleExposure&) { return std::string_view("double"); },
                    },
                    v_);
}

std::vector<double> IncidenceSpec::coefficients() const {
  return std::visit(Overloaded{
                        [](const Bilinear& f) { return std::vector<double>{f.beta}; },
                        [](const Saturated& f) { return std::vector<double>{f.beta, f.a}; },
                        [](const BeddingtonDeAngelis& f) { return std::vector<double>{f.beta, f.a, f.b}; },
                        [](const StandardIncidence& f) { return std::vector<double>{f.beta}; },
                        [](const DoubleExposure& f) { return std::vector<double>{f.beta, f.k}; },
                    },
                    v_);
}

std::string IncidenceSpec::to_string() const {
  std::string out(name());
  char sep = ':';
  for (double c : coefficients()) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, c);  // shortest round-trip form
    out += sep;
    out.append(buf, res.ptr);
    sep = ',';
  }
  return out;
}

double incidence_value(const IncidenceSpec& spec, double s, double i, double r) {
  check_finite(s, i, r);
  return std::visit(Overloaded{
                        [&](const Bilinear& f) { return f.beta * s * i; },
                        [&](const Saturated& f) { return f.beta * s * i / (1.0 + f.a * i); },
                        [&](const BeddingtonDeAngelis& f) { return f.beta * s * i / (1.0 + f.a * i + f.b * s); },
                        [&](const StandardIncidence& f) {
                          const double n = s + i + r;
                          return n == 0.0 ? 0.0 : f.beta * s * i / n;
                        },
                        [&](const DoubleExposure& f) { return f.beta * s * i * (1.0 + f.k * i); },
                    },
                    spec.variant());
}

double incidence_dS(const IncidenceSpec& spec, double s, double i, double r) {
  check_finite(s, i, r);
  return std::visit(Overloaded{
                        [&](const Bilinear& f) { return f.beta * i; },
                        [&](const Saturated& f) { return f.beta * i / (1.0 + f.a * i); },
                        [&](const BeddingtonDeAngelis& f) {
                          const double d = 1.0 + f.a * i + f.b * s;
                          return f.beta * i * (1.0 + f.a * i) / (d * d);
                        },
                        [&](const StandardIncidence& f) {
                          const double n = s + i + r;
                          return n == 0.0 ? 0.0 : f.beta * i * (i + r) / (n * n);
                        },
                        [&](const DoubleExposure& f) { return f.beta * i * (1.0 + f.k * i); },
                    },
                    spec.variant());
}

double incidence_dI(const IncidenceSpec& spec, double s, double i, double r) {
  check_finite(s, i, r);
  return std::visit(Overloaded{
                        [&](const Bilinear& f) { return f.beta * s; },
                        [&](const Saturated& f) {
                          const double d = 1.0 + f.a * i;
                          return f.beta * s / (d * d);
                        },
                        [&](const BeddingtonDeAngelis& f) {
                          const double d = 1.0 + f.a * i + f.b * s;
                          return f.beta * s * (1.0 + f.b * s) / (d * d);
                        },
                        [&](const StandardIncidence& f) {
                          const double n = s + i + r;
                          return n == 0.0 ? 0.0 : f.beta * s * (s + r) / (n * n);
                        },
                        [&](const DoubleExposure& f) { return f.beta * s * (1.0 + 2.0 * f.k * i); },
                    },
                    spec.variant());
}

double incidence_dR(const IncidenceSpec& spec, double s, double i, double r) {
  check_finite(s, i, r);
  if (const auto* f = std::get_if<StandardIncidence>(&spec.variant())) {
    const double n = s + i + r;
    return n == 0.0 ? 0.0 : -f->beta * s * i / (n * n);
  }
  return 0.0;
}

}  // namespace incw
