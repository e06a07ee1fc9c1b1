#pragma once

#include <complex>

// Generated by tests/golden/generate.py.
namespace golden {

inline constexpr double kMlHalfMinusOne = 0.42758357615580700441;
inline constexpr double kMl08_15_Minus2 = 0.36450038459643161468;
inline const std::complex<double> kMl06_1_Ray5{0.065341715749088895203, 0.069554161083366034311};
inline constexpr double kMl07_1_Minus30 = 0.011444251527526973394;
inline constexpr double kMl04_05_Minus4 = 0.037008288242262540189;
inline constexpr double kMlHalfMinus100 = 0.0056416137829894329036;
inline const std::complex<double> kMl12_2_Ray4{0.18735704641111924855, -0.23356441786848647353};
inline constexpr double kJ0At1 = 0.76519768655796655145;
inline constexpr double kJ1At2 = 0.5767248077568733872;
inline constexpr double kJ2At20 = -0.16034135192299815017;
inline constexpr double kJ1At5 = -0.32757913759146522204;
inline constexpr double kJ52At10 = 0.19665848358181841265;
inline const std::complex<double> kJ1p5iAt3{0.41470545632369162997, 0.2161757142787137346};
inline constexpr double kNearJbar1 = -3.2738038773771894293e-56;
inline constexpr double kNearJbar2 = 0.022059749134285159484;
inline constexpr double kNearJbar1Sigma07 = 0.49233516941699431519;
inline constexpr double kNearJbar2Sigma07 = 0.080840487148806016322;
inline constexpr double kSingular1_07 = 0.076430672868375077108;
inline constexpr double kSingular2_15 = 0.011668684547770030193;
inline constexpr double kGaussian03 = 0.72913275846717972437;
inline constexpr double kGaussian1 = 0.000091676960568050180795;

}  // namespace golden
