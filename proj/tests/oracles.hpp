#pragma once
// Reference values from tests/oracles/gen_oracles.py (mpmath, 40 digits),
// pasted in and frozen. They are not recomputed by the build.

#include <complex>

namespace oracle {

using cd = std::complex<double>;

struct ComplexCase {
  cd z;
  cd value;
};

inline const ComplexCase kE1[] = {
    {{1, 0}, {0.21938393439552027368, 0}},
    {{0.01, 0}, {4.0379295765381138112, 0}},
    {{20, 0}, {9.8355252906498816904e-11, 0}},
    {{0, 1}, {-0.33740392290096813466, -0.62471325642771360429}},
    {{0, 2}, {-0.4229808287748649957, 0.034616650007798229345}},
    {{5, 3}, {-0.00095963002614286653253, 0.00033500310361659393052}},
    {{0, 50}, {0.0056283863241163054402, -0.019179254308960724503}},
    {{0, -300}, {0.00333219991859211178, -0.000084761418852900020991}},
    {{0.5, -7}, {-0.041205647600727117001, 0.072679421392525314752}},
    {{-2, 3}, {0.36155194459964029541, 2.1289557822239013885}},
};

inline const ComplexCase kLogGamma[] = {
    {{0.25, 10}, {-15.364592760295240141, 12.634193666938485786}},
    {{0.75, -40}, {-60.990699558352196706, -107.94813766529654968}},
    {{3.5, 0.5}, {1.1598601069175237037, 0.55381507552192051674}},
    {{-2.5, 1}, {-2.3441906524655925559, -8.3041279866579258844}},
    {{100, 1}, {359.12918037083198093, 4.6001786863946674951}},
};

struct HurwitzCase {
  cd s;
  double a;
  cd value;
};

inline const HurwitzCase kHurwitz[] = {
    {{0.5, 0}, 1.0, {-1.4603545088095868129, 0}},
    {{0.5, 0}, 0.3, {0.011152780309969856092, 0}},
    {{0.5, 5}, 0.7, {-0.63690472514200884807, 1.0284467781084147199}},
    {{2, 30}, 0.2, {-9.5521607493056146552, -22.081976433840205999}},
    {{0.5, 100}, 0.9, {0.84875022522448761636, -0.43934544618106317828}},
    {{0.5, 0}, 1e-4, {98.539514877453201656, 0}},
    {{-1.5, 2}, 0.5, {-0.11072908769925459564, 0.057871399947731910869}},
};

inline constexpr double kLHalfChiMinus4 = 0.66769145718960917666;
inline constexpr double kFirstZeroChiMinus4 = 6.0209489046975966549;

// P(j) = sum_p p^-j, j = 2..10
inline constexpr double kPrimeZeta[] = {
    0.45224742004106549851,  0.17476263929944353642,   0.076993139764246844943,
    0.035755017483924257133, 0.017070086850636512954,  0.0082838328561335925351,
    0.0040614053665178305605, 0.0020044675749624506631, 0.00099360357443698021786,
};

struct WeightCase {
  int parity;
  double x;
  double value;
};

inline const WeightCase kWeight[] = {
    {0, 0.5, 0.055405353551231023178},  {1, 0.5, 0.40943223901653266644},
    {0, 2.0, 0.00099495267237840044737}, {1, 2.0, 0.021116049494481837813},
    {0, 10.0, 2.6369635662431888017e-11}, {1, 0.01, 0.99166275118673163333},
};

// U for X = 20 at z = 2.5 log 20, -6i log 20, -40i log 20
inline constexpr double kU_real = 0.000082302381352759194199;
inline const cd kU_minus6i{0.054840197804303348733, 0.010712100029580665399};
inline const cd kU_minus40i{0.0021864222444432669503, -0.0031372535887475913934};

}  // namespace oracle
