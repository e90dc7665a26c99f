#include "epibf/model.hpp"

#include <sstream>

namespace epibf {

std::string to_string(const ModelSpec& model) {
  std::ostringstream out;
  if (model.mechanism == Mechanism::PowerY) {
    out << "power:";
    if (model.infer_p) out << "infer";
    else out << model.p;
  } else if (model.mechanism == Mechanism::ExpDecay) {
    out << "expdecay";
  } else if (model.period == PeriodLaw::GammaKnownShape) {
    out << "gamma:" << model.alpha;
  } else {
    out << "standard";
  }
  return out.str();
}

ModelSpec parse_model(const std::string& text) {
  ModelSpec model;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);

  if (head == "standard" || head == "exp") {
    // defaults
  } else if (head == "gamma") {
    if (arg.empty())
      throw std::invalid_argument("gamma model needs a shape, e.g. gamma:10");
    model.period = PeriodLaw::GammaKnownShape;
    model.alpha = std::stod(arg);
  } else if (head == "power") {
    model.mechanism = Mechanism::PowerY;
    if (arg == "infer" || arg.empty()) {
      model.infer_p = true;
    } else {
      model.p = std::stod(arg);
    }
  } else if (head == "expdecay") {
    model.mechanism = Mechanism::ExpDecay;
  } else {
    throw std::invalid_argument(
        "unknown model '" + text +
        "' (expected standard, gamma:<alpha>, power:<p>|power:infer, expdecay)");
  }
  model.check();
  return model;
}

}  // namespace epibf
