#pragma once

// Butterworth (b, a) coefficients at fs = 8000, frozen from an independent
// reference design (zpk prototype, bilinear transform, prewarped edges).

#include <vector>

namespace reference {

struct TransferFunction {
  std::vector<double> b;
  std::vector<double> a;
};

// 6th-order low-pass 0-500 Hz.
inline const TransferFunction kLowpass500{
    {2.882589194400281e-05, 0.00017295535166401686, 0.00043238837916004214,
     0.0005765178388800563, 0.00043238837916004214, 0.00017295535166401686,
     2.882589194400281e-05},
    {1.0, -4.484563008434195, 8.529005084031883, -8.77910797062046,
     5.147642681385838, -1.6277147848948894, 0.2165828556162417}};

// Band-pass from 3rd-order prototypes.
inline const TransferFunction kBandpass500_1000{
    {0.005300409794525802, 0.0, -0.015901229383577405, 0.0,
     0.015901229383577405, 0.0, -0.005300409794525802},
    {1.0, -4.424597508055054, 8.79771496473697, -9.953355574410715,
     6.753203052260142, -2.6074997172369185, 0.4535459333655302}};

inline const TransferFunction kBandpass1000_2000{
    {0.031689343849711026, 0.0, -0.09506803154913307, 0.0,
     0.09506803154913307, 0.0, -0.031689343849711026},
    {1.0, -1.8469903125906466, 2.6306019374818708, -2.216388375108776,
     1.5749123739485014, -0.6229128133158174, 0.19782518726431925}};

inline const TransferFunction kBandpass2000_3000{
    {0.031689343849711046, 0.0, -0.09506803154913314, 0.0,
     0.09506803154913314, 0.0, -0.031689343849711046},
    {1.0, 1.8469903125906457, 2.63060193748187, 2.2163883751087745,
     1.5749123739485014, 0.6229128133158174, 0.19782518726431936}};

// 6th-order high-pass 3000-4000 Hz.
inline const TransferFunction kHighpass3000{
    {0.0010516467963076106, -0.006309880777845663, 0.01577470194461416,
     -0.021032935926152213, 0.01577470194461416, -0.006309880777845663,
     0.0010516467963076106},
    {1.0, 2.9785299261241276, 4.136080998257473, 3.2597642797509687,
     1.5172788447404673, 0.391117230593912, 0.043356988434755876}};

// 6th-order low-pass 0-1000 Hz.
inline const TransferFunction kLowpass1000{
    {0.0010516467963076104, 0.006309880777845662, 0.015774701944614156,
     0.021032935926152206, 0.015774701944614156, 0.006309880777845662,
     0.0010516467963076104},
    {1.0, -2.978529926124128, 4.136080998257473, -3.2597642797509687,
     1.5172788447404668, -0.39111723059391196, 0.04335698843475587}};

inline const TransferFunction* const kMelpBands[5] = {
    &kLowpass500, &kBandpass500_1000, &kBandpass1000_2000, &kBandpass2000_3000,
    &kHighpass3000};

}  // namespace reference
