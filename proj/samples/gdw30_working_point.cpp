// Searches the field magnitude along the GdW30 reference direction that best
// separates the eight cavity shifts, and prints the shifts at the optimum.

#include "qudit/optimize.hpp"

#include <cstdio>

int main() {
    using namespace qudit;
    const ModelConfig model = gdw30_config();
    const CavityParams cav{5.0, 1e-6, 1e-6};
    const CouplingVector lam = CouplingVector::from_rms_field({0.0, 1e-10, 0.0});
    const Lineshape ls{1e-4, 1.6e14};

    SearchSpace space;
    space.directions = {Eigen::Vector3d(1.0, 0.3, 0.3)};
    space.b_min = 0.0;
    space.b_max = 0.3;
    space.b_step = 5e-3;

    const WorkingPointResult r = optimize_working_point(model, cav, lam, ls, space);
    if (!r.feasible) {
        std::printf("no feasible working point\n");
        for (const auto& d : r.diagnostics) std::printf("  %s\n", d.c_str());
        return 1;
    }
    std::printf("|B| = %.6f T, min separation %.3e GHz (%d evaluations)\n", r.magnitude, r.objective, r.evaluations);
    for (std::size_t k = 0; k < r.shifts.size(); ++k) std::printf("  state %zu: %+.6e GHz\n", k, r.shifts[k].real());
    return 0;
}
