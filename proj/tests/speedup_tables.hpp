#pragma once

#include <array>

// Reported strong-scaling results for p = 1..9: inside-element (i) and
// over-elements (e) worker counts, speedups, fractions and limits, plus the
// combined limit.
struct SpeedupRow {
    int p;
    int nu_i;
    double s_i;
    double p_i;
    double inf_i;
    int nu_e;
    double s_e;
    double p_e;
    double inf_e;
    double combined;
};

inline constexpr std::array<SpeedupRow, 9> classical_rows{{
    {1, 8, 1.38, 0.31, 1.46, 3, 2.5, 0.9, 10.00, 14.59},
    {2, 8, 2.53, 0.69, 3.24, 6, 5.4, 0.98, 45.00, 145.69},
    {3, 12, 3.85, 0.81, 5.20, 9, 7.8, 0.98, 52.00, 270.21},
    {4, 11, 5.27, 0.89, 9.20, 10, 7.8, 0.97, 31.91, 293.47},
    {5, 12, 6.53, 0.92, 13.13, 12, 11.29, 0.99, 174.92, 2296.93},
    {6, 12, 7.15, 0.94, 16.22, 12, 11.15, 0.99, 144.29, 2339.94},
    {7, 12, 7.11, 0.94, 15.99, 12, 10.75, 0.99, 94.60, 1513.02},
    {8, 12, 8.12, 0.96, 23.02, 12, 10.88, 0.99, 106.86, 2459.92},
    {9, 12, 8.24, 0.96, 24.11, 12, 10.44, 0.99, 73.62, 1774.60},
}};

inline constexpr std::array<SpeedupRow, 9> sumfact_rows{{
    {1, 1, 1, 0, 1, 2, 1.5, 0.67, 3, 3.00},
    {2, 1, 1, 0, 1, 4, 2.9, 0.87, 7.91, 7.91},
    {3, 1, 1, 0, 1, 4, 2.9, 0.87, 7.91, 7.91},
    {4, 12, 1.07, 0.07, 1.08, 4, 3.3, 0.93, 14.14, 15.23},
    {5, 10, 1.11, 0.11, 1.12, 4, 3.5, 0.95, 21, 23.60},
    {6, 10, 1.17, 0.16, 1.19, 4, 3.5, 0.95, 21, 25.04},
    {7, 12, 1.77, 0.47, 1.9, 4, 3.2, 0.92, 12, 22.84},
    {8, 10, 1.26, 0.23, 1.3, 4, 3.4, 0.94, 17, 22.06},
    {9, 11, 1.36, 0.29, 1.41, 4, 3.5, 0.95, 21, 29.63},
}};
