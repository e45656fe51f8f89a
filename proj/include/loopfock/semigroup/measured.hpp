#pragma once

#include <vector>

#include "loopfock/dvr/smith.hpp"

namespace loopfock {

// scale times the Lebesgue measure in the coordinates of the ordered basis.
struct HaarMeasure {
  std::vector<NegVector> basis;
  Rational scale = 1;

  int dim() const { return static_cast<int>(basis.size()); }
};

// The same measure described relative to another basis of the same space.
HaarMeasure rebase(const HaarMeasure& mu, const std::vector<NegVector>& new_basis);

struct MeasuredElement {
  int l = 0;
  LoopMatrix g;
  HaarMeasure mu;
};

HaarMeasure mu_st(const LoopMatrix& g);
// Scale 1 on the lattice basis of V_g.
HaarMeasure unit_measure(const LoopMatrix& g);

MeasuredElement make_element(const LoopMatrix& g, const HaarMeasure& mu, int l = 0);
MeasuredElement standard_element(const LoopMatrix& g, int l = 0);
MeasuredElement identity_element(int n);

// (l1 + l2, g1 g2, mu1 * mu2) without normalization.
MeasuredElement convolve(const MeasuredElement& m1, const MeasuredElement& m2);
// Removes the common t-power of g into l via (t^{k+l}, a) ~ (t^k, (t^l I, mu_st) a).
MeasuredElement normalize(const MeasuredElement& m);
MeasuredElement invert(const MeasuredElement& m);

bool same_measure(const HaarMeasure& a, const HaarMeasure& b);
bool same_pair(const MeasuredElement& a, const MeasuredElement& b);
bool same_class(const MeasuredElement& a, const MeasuredElement& b);
bool is_identity_class(const MeasuredElement& m);

// Ratio of (t^k I, mu_st)(u, mu_st) to (u, mu_st)(t^k I, mu_st), measured by
// computing both convolutions.
Rational commutation_scalar(const LoopMatrix& u, int k);

bool is_central_G(const TruncatedSeries& a);

}  // namespace loopfock
