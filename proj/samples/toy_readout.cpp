// Reads out an S = 1 qutrit from the sign of the transmission phase on both
// sides of the cavity line and compares with the prepared state.

#include "qudit/inout.hpp"
#include "qudit/models.hpp"

#include <cstdio>

int main() {
    using namespace qudit;
    const GiantSpinConfig model = toy_s1_config(2.87);
    const CavityParams cav{2.6899, 4e-5, 4e-5};
    const double xi = 0.1;   // GHz, below D - Omega
    const FieldVector b{0.0, 0.0, xi / (units::mu_B * 2.0)};
    const CouplingVector lam = CouplingVector::electronic_only(9.6e-3, 0.0, 0.0);
    const double probe = 1.5e-3;   // GHz on either side of Omega

    SpectralModel sm = build_spectral_model(model, b, lam, {9.4e-3, 1.0});
    std::printf("%5s %4s %14s %6s %7s\n", "state", "M", "shift (MHz)", "signs", "read M");
    for (int k = 0; k < sm.dim(); ++k) {
        Eigen::Index j = 0;
        sm.eigen.vectors.col(k).cwiseAbs2().maxCoeff(&j);
        const int m = 1 - static_cast<int>(j);   // basis index j holds M = s - j
        sm.populations = populations(sm.eigen, PureState{k});
        const auto [left, right] = phase_probe_signs(cav.omega, probe, cav, sm);
        std::printf("%5d %4d %14.6f %5c%c %7d\n", k, m, dispersive_shift(k, sm, cav).real() * 1e3,
                    left > 0 ? '+' : '-', right > 0 ? '+' : '-', classify_s1_phase(left, right));
    }
    return 0;
}
