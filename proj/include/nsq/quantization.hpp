#pragma once

// Cutting functions and the effective potential of the f-modified
// Hamiltonian
//
//   H = -hbar^2/(2m) Laplacian + hbar^2/(2m) * (Laplacian f)/f + V,
//
// obtained by quantizing p^2 written as f^-1 p f^2 p f^-1.

#include <functional>
#include <limits>
#include <string_view>
#include <variant>

#include "nsq/table.hpp"

namespace nsq {

using Potential1D = std::function<double(double)>;

inline constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  /// Gaussian cutting length; infinity means standard quantization.
  double cutting_length = kInfiniteLength;

  void validate() const;
  bool has_cutting() const { return cutting_length != kInfiniteLength; }
};

class CuttingFunction {
 public:
  struct Identity {};
  struct Gaussian {
    double a;
  };
  struct Tabulated {
    Table f;
    // (d^2 f/dx^2)/f at the interior nodes 1..n-2, three-point stencil.
    std::vector<double> ratio;
  };
  enum class Kind { Identity, Gaussian, Tabulated };

  CuttingFunction() = default;
  static CuttingFunction identity() { return {}; }
  /// exp(-x^2/(2a^2)); a = infinity yields the identity.
  static CuttingFunction gaussian(double a);
  static CuttingFunction tabulated(Table f);

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is_identity() const { return kind() == Kind::Identity; }
  /// Cutting length for the Gaussian variant, infinity for the identity.
  double gaussian_length() const;
  const Tabulated* table() const { return std::get_if<Tabulated>(&rep_); }

  /// f at coordinate magnitude r (the Gaussian is isotropic).
  double value(double r) const;

  /// Range on which laplacian_ratio is defined for tabulated f.
  double interior_min() const;
  double interior_max() const;

 private:
  std::variant<Identity, Gaussian, Tabulated> rep_;
};

std::string_view to_string(CuttingFunction::Kind kind);

class PotentialSpec {
 public:
  struct Harmonic {
    double mass;
    double omega;
  };
  struct FreeBox {};
  struct Tabulated {
    Table v;
  };
  enum class Kind { Harmonic, FreeBox, Tabulated };

  static PotentialSpec harmonic(double mass, double omega);
  static PotentialSpec free_box() { return PotentialSpec(FreeBox{}); }
  static PotentialSpec tabulated(Table v) { return PotentialSpec(Tabulated{std::move(v)}); }

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  const Harmonic* harmonic_params() const { return std::get_if<Harmonic>(&rep_); }
  const Table* table() const;

  double operator()(double x) const;

 private:
  template <class T>
  explicit PotentialSpec(T rep) : rep_(std::move(rep)) {}
  std::variant<Harmonic, FreeBox, Tabulated> rep_;
};

std::string_view to_string(PotentialSpec::Kind kind);

/// (Laplacian f)/f at coordinate magnitude x in `dims` dimensions.
/// Gaussian: x^2/a^4 - D/a^2. Identity: 0. Tabulated (D = 1 only): central
/// second difference over f, linearly interpolated between interior nodes.
double laplacian_ratio(const CuttingFunction& f, double x, int dims = 1);

/// x -> V(x) + hbar^2/(2m) * laplacian_ratio(f, x). With the identity cutting
/// function this returns V itself.
Potential1D effective_potential(const PotentialSpec& v, const CuttingFunction& f, double mass,
                                double hbar);

/// x -> hbar^2/(2 m a^2) (x^2/a^2 - 1), the term the Gaussian cutting function
/// adds to any V.
Potential1D quantum_wall(double a, double mass, double hbar);

}  // namespace nsq
