#pragma once

// The worked systems used across the test suites.
#include "monotrack/system.hpp"

namespace fixtures {

using namespace monotrack;

// 5-state, 4-input, 3-output, non-strictly-proper, uncontrollable but
// stabilizable, three non-minimum-phase zeros.
inline LtiSystem<Rat> exe0() {
    LtiSystem<Rat> s;
    s.A = MatQ(5, 5);
    s.A << -6, 0, 0, 0, 0,
            3, 3, 0, 0, 0,
            0, 0, 2, 0, 2,
           -1, 0, 2, 0, 0,
           -2, 0, 0, 0, 2;
    s.B = MatQ(5, 4);
    s.B << 0, 0, 0, 0,
           0, 0, 0, -3,
           0, 4, 2, 0,
           1, -1, 0, -1,
           0, -1, 0, 0;
    s.C = MatQ(3, 5);
    s.C << -1, 0, 0, 0, 0,
            3, 0, 0, 0, 9,
            1, 0, 0, 0, 0;
    s.D = MatQ(3, 4);
    s.D << 0, 0, -2, 0,
           0, 3, -3, -3,
           0, 0, 2, -2;
    return s;
}

// 4-state, 3-input, 2-output, strictly proper, one minimum-phase zero.
inline LtiSystem<Rat> esprimo() {
    LtiSystem<Rat> s;
    s.A = MatQ(4, 4);
    s.A << 0, 0, 0, -1,
           0, -2, -2, 0,
           1, 0, -4, 0,
           0, 0, 0, 1;
    s.B = MatQ(4, 3);
    s.B << 2, 2, 0,
           0, 0, 0,
          -2, 0, 0,
           0, 0, 4;
    s.C = MatQ(2, 4);
    s.C << -1, 0, 1, 0,
            0, -1, 2, 0;
    s.D = MatQ::Zero(2, 3);
    return s;
}

// 3-state square system, two minimum-phase zeros, R* = {0}.
inline LtiSystem<Rat> esaggiunto2() {
    LtiSystem<Rat> s;
    s.A = MatQ(3, 3);
    s.A << -10, 0, 8,
             0, -9, 0,
             1, 3, 10;
    s.B = MatQ(3, 2);
    s.B << 0, 0,
           0, 0,
          -8, 0;
    s.C = MatQ(2, 3);
    s.C << -3, 0, 8,
            9, -5, 6;
    s.D = MatQ(2, 2);
    s.D << 0, 0,
           0, 4;
    return s;
}

// 3-state square system, zeros -1 and -16/3.
inline LtiSystem<Rat> esaggiunto3() {
    LtiSystem<Rat> s;
    s.A = MatQ(3, 3);
    s.A << 0, 1, 4,
           0, -1, 0,
          -8, -6, 7;
    s.B = MatQ(3, 2);
    s.B << 0, 2,
         -10, 0,
          -2, -3;
    s.C = MatQ(2, 3);
    s.C << 0, 0, 1,
           0, 0, 0;
    s.D = MatQ(2, 2);
    s.D << -8, 0,
           -2, 0;
    return s;
}

// SISO, strictly proper, non-minimum-phase zero at +1: globally monotonic
// tracking is impossible (h = 0 < n - p).
inline LtiSystem<Rat> siso_nmp() {
    LtiSystem<Rat> s;
    s.A = MatQ(2, 2);
    s.A << 0, 1,
           0, 0;
    s.B = MatQ(2, 1);
    s.B << 0, 1;
    s.C = MatQ(1, 2);
    s.C << 1, -1;
    s.D = MatQ::Zero(1, 1);
    return s;
}

inline MatQ exe0_f1() {
    MatQ F(4, 5);
    F << Rat(925, 198), Rat(4, 3), -2, -1, 3,
         Rat(-39, 22), 0, 0, 0, 3,
         Rat(107, 88), 0, Rat(-3, 2), 0, -7,
         Rat(4, 9), Rat(4, 3), 0, 0, 0;
    return F;
}

} // namespace fixtures
