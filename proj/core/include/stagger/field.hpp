#pragma once

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "stagger/reduced_constraint.hpp"
#include "stagger/reduced_crack.hpp"

namespace stagger {

// Rectangular index window of the lattice, bounds inclusive.
struct FieldWindow {
    long x_min = -10, x_max = 10;
    long y_min = -10, y_max = 10;

    long width() const noexcept { return x_max - x_min + 1; }
    long height() const noexcept { return y_max - y_min + 1; }
    bool contains(long x, long y) const noexcept {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

// Scattered and incident displacement on a window; rows stored y-major.
struct LatticeField {
    FieldWindow window;
    std::vector<cplx> scattered;
    std::vector<cplx> incident;

    std::size_t index(long x, long y) const;
    cplx at(long x, long y) const { return scattered[index(x, y)]; }
    cplx incident_at(long x, long y) const { return incident[index(x, y)]; }
    cplx total(long x, long y) const { return at(x, y) + incident_at(x, y); }
};

// Which part of the right-hand side drives the synthesis.
enum class FieldPart {
    Full,          // complete scattered field
    Aligned,       // response without the stagger terms
    Perturbation,  // effect of the stagger alone
};

// Two-component contour solution of the Wiener-Hopf equation.
struct WHSolution {
    std::array<std::vector<cplx>, 2> minus;
    std::array<std::vector<cplx>, 2> plus;
    double residual = 0.0;  // max-norm of the Wiener-Hopf equation on the contour
};

// Transforms u_y^F of every row, from the two defect-row transforms and lambda.
class RowTransforms {
public:
    // Crack pair: jumps v_0^F and v_N^F of the two cracked rows.
    static RowTransforms from_crack_jumps(const PreparedScenario& p, const std::vector<cplx>& jump0,
                                          const std::vector<cplx>& jumpN);
    // Constraint pair: transforms u_0^F and u_N^F of the two constrained rows.
    static RowTransforms from_constraint_rows(const PreparedScenario& p, const std::vector<cplx>& row0,
                                              const std::vector<cplx>& rowN);

    std::vector<cplx> row(long y) const;

private:
    DefectKind kind_ = DefectKind::CrackPair;
    int n_sep_ = 1;
    std::vector<cplx> lambda_, coef_a_, coef_b_, lower_, upper_;
};

// u_{x} = (1/2 pi i) contour integral of u^F z^{x-1}, by the trapezoid rule.
std::vector<cplx> inverse_transform(const std::vector<cplx>& samples, const ContourGrid& grid, long x_min,
                                    long x_max);

WHSolution wh_solution_on_contour(const PreparedScenario& p, const ReducedSolution& crack,
                                  FieldPart part = FieldPart::Full);

// The aligned and perturbation parts need u^t_{-1,N} of the full field.
WHSolution wh_solution_on_contour(const PreparedScenario& p, const ConstraintSolution& constraint,
                                  FieldPart part = FieldPart::Full, cplx total_m1N = {});

// Scattered and incident field on the window.
LatticeField synthesize_crack(const PreparedScenario& p, const ReducedSolution& sol, const FieldWindow& window,
                              FieldPart part = FieldPart::Full);
LatticeField synthesize_constraint(const PreparedScenario& p, const ConstraintSolution& sol,
                                   const FieldWindow& window, FieldPart part = FieldPart::Full);

// Solves the reduced system and synthesizes the full scattered field.
struct FieldRun {
    PreparedScenario prepared;
    ReducedSolution reduced;      // crack unknowns, or the constraint system
    double g_inc_max = 0.0;       // constraint only
    double wh_residual = 0.0;
    LatticeField field;
};

FieldRun run_field(const ScatteringScenario& s, const FieldWindow& window, const NumericsOptions& options = {});

// Aligned part and stagger perturbation; their sum is the full field.
struct StaggerSplit {
    LatticeField aligned;
    LatticeField perturbation;
    double sum_deviation = 0.0;  // max |aligned + perturbation - full|
};

StaggerSplit stagger_perturbation(const ScatteringScenario& s, const FieldWindow& window,
                                  const NumericsOptions& options = {});

// Cross-run check of the flip map between offsets M and -M.
struct FlipReport {
    int m_offset = 0;
    double segment_deviation = 0.0;
    double extras_deviation = 0.0;  // constraint pair only
    double max_deviation() const noexcept { return std::max(segment_deviation, extras_deviation); }
};

// The mirrored run uses offset -M, angle -theta and amplitude
// A exp(i kx M + i ky (N - 1)) for cracks, A exp(i kx M + i ky N) for constraints.
FlipReport flip_check(const ScatteringScenario& s, const NumericsOptions& options = {});

// max |Laplacian u + omega^2 u| of the scattered field over interior window sites
// away from the defect rows.
double off_defect_residual(const LatticeField& field, const ScatteringScenario& s);

// Sites of the constraint rows inside the window.
std::vector<std::pair<long, long>> constrained_sites(const ScatteringScenario& s, const FieldWindow& window);

}  // namespace stagger
