#include "loopfock/functionals/highest_weight.hpp"

#include "loopfock/errors.hpp"

namespace loopfock {

Scalar I_pair(int k, const GaussPoly& f) {
  if (k < 1 || k > f.m()) throw InvalidArgument("I_k needs 1 <= k <= n");
  return slice_integral(f, k);
}

bool in_positive_part(const Generator& g) {
  if (g.mode >= 1) return true;
  return g.mode == 0 && g.kind == GenKind::offdiag && g.u < g.v;
}

int weight_pairing(int k, int u, int v) { return -((u <= k ? 1 : 0) - (v <= k ? 1 : 0)); }

Scalar highest_weight_residual(int k, const Generator& gen, const GaussPoly& f) {
  if (gen.mode < 0) throw InvalidArgument("highest weight checks take modes >= 0");
  if (gen.kind == GenKind::raw) throw InvalidArgument("highest weight checks take sl_n generators");
  const bool cartan0 = gen.kind == GenKind::cartan && gen.mode == 0;
  if (!cartan0 && !in_positive_part(gen)) throw InvalidArgument("generator is not in n^+ or the cartan");
  const FockModel model = FockModel::vector_model(f.m());
  const Scalar paired = I_pair(k, apply(model, gen, f));
  if (!cartan0) return paired;
  return paired + Scalar(weight_pairing(k, gen.u, gen.v)) * I_pair(k, f);
}

std::vector<WeightEntry> weight_table(const GaussPoly& f) {
  const int n = f.m();
  const FockModel model = FockModel::vector_model(n);
  std::vector<WeightEntry> out;
  for (int k = 1; k <= n; ++k) {
    const Scalar base = I_pair(k, f);
    if (base.is_zero()) throw InvalidArgument("I_k(f) vanishes; weights cannot be measured on f");
    for (int j = 1; j < n; ++j) {
      const Scalar hf = I_pair(k, apply(model, Generator::cartan(j, j + 1, 0), f));
      const auto q = exact_quotient(hf, base);
      if (!q || !(q->is_zero() || (q->is_monomial() && q->terms()[0].alpha == 0 && q->terms()[0].beta == 0)))
        throw NotProportional("cartan pairing is not a rational multiple of I_k(f)");
      const Rational r = q->is_zero() ? Rational(0) : q->terms()[0].q;
      out.push_back(WeightEntry{k, j, Rational(-r), weight_pairing(k, j, j + 1)});
    }
  }
  return out;
}

Rational dual_level(int n) {
  const FockModel model = FockModel::vector_model(n);
  const Scalar level = measure_level(model, 1, 2, 1, model.vacuum(6));
  if (!(level.is_monomial() && level.terms()[0].alpha == 0 && level.terms()[0].beta == 0))
    throw NotProportional("level is not rational");
  return -level.terms()[0].q;
}

std::vector<Generator> positive_and_cartan_generators(int n, int max_mode) {
  std::vector<Generator> out;
  for (int mode = 0; mode <= max_mode; ++mode) {
    for (int u = 1; u <= n; ++u) {
      for (int v = 1; v <= n; ++v) {
        if (u == v) continue;
        if (mode >= 1 || u < v) out.push_back(Generator::offdiag(u, v, mode));
        if (u < v) out.push_back(Generator::cartan(u, v, mode));
      }
    }
  }
  return out;
}

}  // namespace loopfock
