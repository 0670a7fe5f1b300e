#include "nsq/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nsq {

void OscillatorParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be > 0");
  if (!(cutting_length > 0.0)) throw std::invalid_argument("cutting length a must be > 0");
}

CuttingFunction CuttingFunction::gaussian(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("Gaussian cutting length a must be > 0");
  CuttingFunction c;
  if (std::isinf(a)) return c;
  c.rep_ = Gaussian{a};
  return c;
}

CuttingFunction CuttingFunction::tabulated(Table f) {
  const auto x = f.abscissae();
  const auto y = f.values();
  if (f.size() < 3) {
    throw std::invalid_argument("tabulated cutting function needs at least three rows");
  }
  for (double v : y) {
    if (!(v > 0.0)) throw std::invalid_argument("tabulated cutting function must be positive");
  }
  std::vector<double> ratio(f.size() - 2);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    const double d2 = 2.0 * ((y[i + 1] - y[i]) / hp - (y[i] - y[i - 1]) / hm) / (hp + hm);
    ratio[i - 1] = d2 / y[i];
  }
  CuttingFunction c;
  c.rep_ = Tabulated{std::move(f), std::move(ratio)};
  return c;
}

double CuttingFunction::gaussian_length() const {
  if (const auto* g = std::get_if<Gaussian>(&rep_)) return g->a;
  if (is_identity()) return kInfiniteLength;
  throw std::logic_error("tabulated cutting function has no Gaussian length");
}

double CuttingFunction::value(double r) const {
  switch (kind()) {
    case Kind::Identity:
      return 1.0;
    case Kind::Gaussian: {
      const double a = std::get<Gaussian>(rep_).a;
      return std::exp(-r * r / (2.0 * a * a));
    }
    case Kind::Tabulated:
      return std::get<Tabulated>(rep_).f(r);
  }
  return 1.0;
}

double CuttingFunction::interior_min() const {
  if (const auto* t = table()) return t->f.abscissae()[1];
  return -kInfiniteLength;
}

double CuttingFunction::interior_max() const {
  if (const auto* t = table()) return t->f.abscissae()[t->f.size() - 2];
  return kInfiniteLength;
}

std::string_view to_string(CuttingFunction::Kind kind) {
  switch (kind) {
    case CuttingFunction::Kind::Identity:
      return "identity";
    case CuttingFunction::Kind::Gaussian:
      return "gaussian";
    case CuttingFunction::Kind::Tabulated:
      return "tabulated";
  }
  return "identity";
}

PotentialSpec PotentialSpec::harmonic(double mass, double omega) {
  if (!(mass > 0.0) || !(omega > 0.0)) {
    throw std::invalid_argument("harmonic potential needs mass > 0 and omega > 0");
  }
  return PotentialSpec(Harmonic{mass, omega});
}

const Table* PotentialSpec::table() const {
  if (const auto* t = std::get_if<Tabulated>(&rep_)) return &t->v;
  return nullptr;
}

double PotentialSpec::operator()(double x) const {
  switch (kind()) {
    case Kind::Harmonic: {
      const auto& h = std::get<Harmonic>(rep_);
      return 0.5 * h.mass * h.omega * h.omega * x * x;
    }
    case Kind::FreeBox:
      return 0.0;
    case Kind::Tabulated:
      return std::get<Tabulated>(rep_).v(x);
  }
  return 0.0;
}

std::string_view to_string(PotentialSpec::Kind kind) {
  switch (kind) {
    case PotentialSpec::Kind::Harmonic:
      return "harmonic";
    case PotentialSpec::Kind::FreeBox:
      return "box";
    case PotentialSpec::Kind::Tabulated:
      return "tabulated";
  }
  return "harmonic";
}

double laplacian_ratio(const CuttingFunction& f, double x, int dims) {
  if (dims < 1) throw std::invalid_argument("dimension count must be >= 1");
  switch (f.kind()) {
    case CuttingFunction::Kind::Identity:
      return 0.0;
    case CuttingFunction::Kind::Gaussian: {
      const double a2 = f.gaussian_length() * f.gaussian_length();
      return x * x / (a2 * a2) - static_cast<double>(dims) / a2;
    }
    case CuttingFunction::Kind::Tabulated:
      break;
  }
  if (dims != 1) {
    throw std::invalid_argument("tabulated cutting functions are one-dimensional");
  }
  const auto& t = *f.table();
  const auto xs = t.f.abscissae();
  const std::size_t n = t.f.size();
  if (!(x >= xs[1] && x <= xs[n - 2])) {
    throw std::out_of_range("laplacian of tabulated cutting function at " + std::to_string(x) +
                            " needs a central stencil; defined on [" + std::to_string(xs[1]) +
                            ", " + std::to_string(xs[n - 2]) + "]");
  }
  if (n == 3) return t.ratio[0];
  // Interval [xs[i], xs[i+1]] restricted to interior nodes 1..n-2.
  std::size_t i = t.f.interval(x);
  i = std::clamp<std::size_t>(i, 1, n - 3);
  const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return t.ratio[i - 1] + w * (t.ratio[i] - t.ratio[i - 1]);
}

Potential1D effective_potential(const PotentialSpec& v, const CuttingFunction& f, double mass,
                                double hbar) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be > 0");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  if (f.is_identity()) return [v](double x) { return v(x); };
  const double coeff = hbar * hbar / (2.0 * mass);
  return [v, f, coeff](double x) { return v(x) + coeff * laplacian_ratio(f, x, 1); };
}

Potential1D quantum_wall(double a, double mass, double hbar) {
  if (!(a > 0.0)) throw std::invalid_argument("quantum wall length a must be > 0");
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be > 0");
  if (std::isinf(a)) return [](double) { return 0.0; };
  const double scale = hbar * hbar / (2.0 * mass * a * a);
  return [scale, a](double x) { return scale * (x * x / (a * a) - 1.0); };
}

}  // namespace nsq
