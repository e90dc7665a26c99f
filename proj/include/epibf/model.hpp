#ifndef EPIBF_MODEL_HPP
#define EPIBF_MODEL_HPP

#include <stdexcept>
#include <string>

namespace epibf {

enum class PeriodLaw {
  Exponential,      // T_I ~ Exp(gamma)
  GammaKnownShape,  // T_I ~ Gamma(alpha, delta), alpha fixed
};

enum class Mechanism {
  Standard,  // infection rate beta n^-1 X(t) Y(t)
  PowerY,    // beta n^-1 X(t) Y^p(t)
  ExpDecay,  // beta n^-1 e^{-bt} X(t) Y(t)
};

/// Which infectious-period law and infection mechanism, with the fixed
/// hyperparameters. p = 1 makes PowerY the degenerate alias of Standard;
/// when p is inferred its prior is U(0, 0.5).
struct ModelSpec {
  PeriodLaw period = PeriodLaw::Exponential;
  double alpha = 1.0;  // gamma shape, assumed known
  Mechanism mechanism = Mechanism::Standard;
  bool infer_p = false;
  double p = 1.0;  // used when mechanism == PowerY and !infer_p

  void check() const {
    if (period == PeriodLaw::GammaKnownShape && alpha < 1.0)
      throw std::invalid_argument("gamma shape alpha must be >= 1");
    if (mechanism == Mechanism::PowerY && !infer_p && (p < 0.0 || p > 1.0))
      throw std::invalid_argument("fixed p must lie in [0, 1]");
  }

  bool has_p() const { return mechanism == Mechanism::PowerY; }
  bool has_b() const { return mechanism == Mechanism::ExpDecay; }
};

/// Concrete parameter values for simulation or likelihood evaluation.
/// removal_rate is gamma under the exponential law and delta under the
/// gamma law.
struct Params {
  double beta = 1.0;
  double removal_rate = 1.0;
  double p = 1.0;  // PowerY exponent
  double b = 0.0;  // ExpDecay rate
};

struct GammaPrior {
  double shape = 1.0;
  double rate = 1.0;

  static GammaPrior exponential(double rate) { return {1.0, rate}; }
  double mean() const { return shape / rate; }
  void check() const {
    if (shape <= 0 || rate <= 0)
      throw std::invalid_argument("gamma prior parameters must be positive");
  }
};

/// Prior hyperparameters. p is U(0, 0.5) and b is Exp(b_rate) throughout;
/// the initial infection time satisfies I_z = R_min - Y with Y ~ Exp(psi).
struct PriorSpec {
  GammaPrior beta{1.0, 1.0};
  GammaPrior gamma{1.0, 1.0};
  GammaPrior delta{1.0, 1.0};
  double b_rate = 1.0;
  double iz_rate = 1.0;  // psi

  void check() const {
    beta.check();
    gamma.check();
    delta.check();
    if (b_rate <= 0 || iz_rate <= 0)
      throw std::invalid_argument("prior rates must be positive");
  }

  /// Identical Exp(lambda) priors on beta, gamma, delta, as used in the
  /// partially-observed analyses.
  static PriorSpec exponential(double lambda, double psi = 1.0) {
    PriorSpec s;
    s.beta = s.gamma = s.delta = GammaPrior::exponential(lambda);
    s.iz_rate = psi;
    return s;
  }
};

std::string to_string(const ModelSpec& model);
ModelSpec parse_model(const std::string& text);

}  // namespace epibf

#endif
