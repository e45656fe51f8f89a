#pragma once

// Constants shared by the scalar and vector kernels so both produce the same
// approximation.
namespace loopfock::simd::detail {

inline constexpr double kLog2e = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93145751953125E-1;
inline constexpr double kLn2Lo = 1.42860682030941723212E-6;
inline constexpr double kExpMax = 709.78;
inline constexpr double kExpMin = -745.13;

// Taylor coefficients 1/k! for k = 13 down to 2.
inline constexpr double kExpPoly[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
                                      1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,      1.0 / 720.0,
                                      1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,         0.5};

inline constexpr double kTwoOverPi = 0.63661977236758134308;
// pi/2 split into three parts; the first two have short mantissas.
inline constexpr double kPio2A = 1.57079625129699707031;
inline constexpr double kPio2B = 7.54978941586159635336E-8;
inline constexpr double kPio2C = 5.39030285815811905290E-15;

inline constexpr double kSinPoly[] = {1.58962301576546568060E-10, -2.50507477628578072866E-8,
                                      2.75573136213857245213E-6,  -1.98412698295895385996E-4,
                                      8.33333333332211858878E-3,  -1.66666666666666307295E-1};
inline constexpr double kCosPoly[] = {-1.13585365213876817300E-11, 2.08757008419747316778E-9,
                                      -2.75573141792967388112E-7,  2.48015872888517045348E-5,
                                      -1.38888888888730564116E-3,  4.16666666666665929218E-2};

}  // namespace loopfock::simd::detail
