#include "loopfock/hecke/circle.hpp"

#include <cstdlib>
#include <sstream>

#include "loopfock/errors.hpp"

namespace loopfock {

FourierPoly FourierPoly::basis(long k, const GaussianRational& c) {
  FourierPoly f;
  f.add(k, c);
  return f;
}

void FourierPoly::add(long k, const GaussianRational& c) {
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

GaussianRational FourierPoly::coeff(long k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

long FourierPoly::max_frequency() const {
  long best = 0;
  for (const auto& [k, c] : terms_) best = std::max(best, std::labs(k));
  return best;
}

FourierPoly FourierPoly::operator+(const FourierPoly& o) const {
  FourierPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, c);
  return r;
}

std::string FourierPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << loopfock::to_string(c.re) << (c.im < 0 ? "-" : "+") << loopfock::to_string(abs_value(c.im))
       << "i)e_" << k;
  }
  return os.str();
}

FourierPoly circle_hecke(long nn, const FourierPoly& f) {
  if (nn < 1) throw InvalidArgument("circle_hecke needs nn >= 1");
  FourierPoly out;
  const Rational scale(nn);
  for (const auto& [k, c] : f.terms()) {
    if (k % nn == 0) out.add(k / nn, c * scale);
  }
  return out;
}

}  // namespace loopfock
