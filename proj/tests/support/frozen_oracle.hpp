#pragma once

#include <complex>
#include <vector>

#include "stagger/scenario.hpp"

namespace stagger::testing {

// Desk scenario: omega = 0.9 + 0.1i, theta = 25 degrees, N = 5, A = 1.
inline ScatteringScenario desk_scenario(DefectKind kind, int m_offset) {
    ScatteringScenario s;
    s.omega = {0.9, 0.1};
    s.theta = 25.0 * 3.14159265358979323846 / 180.0;
    s.amplitude = {1.0, 0.0};
    s.kind = kind;
    s.n_sep = 5;
    s.m_offset = m_offset;
    return s;
}

// Segment traces of an independent finite-grid solve (half-width 60,
// Dirichlet boundary), in segment_sites order; the constraint pair appends
// u^t_{-1,0} and u^t_{M-1,N}.
inline std::vector<cplx> frozen_crack_plus3() {
    return {{-3.546565862835410e-01, -7.253756198072470e-02},
            {-1.788557598520968e-01, -2.299941447260075e-01},
            {7.268218119600300e-02, -1.964067724438314e-01}};
}

inline std::vector<cplx> frozen_crack_minus3() {
    return {{-1.003749538401156e+00, -3.308623144680477e-01},
            {-7.603347029962613e-01, 4.812302664952179e-01},
            {-2.450007537744736e-02, 6.783243663570165e-01}};
}

inline std::vector<cplx> frozen_constraint_plus3() {
    return {{-6.523738664745573e-01, 1.447382947449315e+00},
            {-1.536144067639134e+00, 7.586324629498984e-01},
            {-1.441434931650348e+00, 3.081160091088158e-02},
            {4.651394940707001e-01, -1.152536263656603e+00},
            {-7.275132552195900e-01, 1.229124847636820e-01}};
}

inline std::vector<cplx> frozen_constraint_minus3() {
    return {{9.706347135335579e-01, 2.793558330076596e-01},
            {1.081946820865023e+00, -4.169656077282581e-01},
            {7.185302145956862e-01, -1.377514008478122e+00},
            {4.756400117829800e-01, -9.779107854701619e-01},
            {-3.105634043868357e-01, -1.265609689978676e+00}};
}

}  // namespace stagger::testing
