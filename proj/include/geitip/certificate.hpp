#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "geitip/linear_form.hpp"
#include "geitip/span_solver.hpp"

namespace geitip {

using ConicCoeffs = std::map<Variable, Rational, VarPrecedes>;

// The verifiable witness of a proof: nonnegative multipliers over the
// problem's inequality constraints plus free multipliers over its equality
// constraints whose combination reproduces the objective exactly.
struct Certificate {
    std::map<std::size_t, Rational> ineq_mults;  // constraint index -> mult >= 0
    std::map<std::size_t, Rational> eq_mults;    // equality index -> mult
    LinearForm reconstructed;                    // the recombined objective (audit)
};

// True iff every inequality multiplier is nonnegative and
//   sum mu_i * ineqs[i] + sum nu_k * eqs[k] == target
// holds as an exact identity. Out-of-range indices are malformed.
bool verify_combination(const Certificate& cert, const std::vector<LinearForm>& ineqs,
                        const std::vector<LinearForm>& eqs, const LinearForm& target);

// Accumulates everything needed to turn a pipeline run into a certificate.
//
// Constraint i (0-based) is represented by slack a_{i+1}; `constraint_forms`
// holds the constraint forms in the base space (joint entropies for the main
// pipeline, unit slack forms for native slack-space problems). Equality rows
// of slack-space inputs are registered as `equality_forms` so that their
// multipliers can be recovered; the main pipeline has none at this level
// because its reduced constraint forms satisfy exact identities.
//
// Whenever a slack is fixed to zero (a proven implied equality), the caller
// records the conic justification of -a_z >= 0; the trail converts it into an
// exact identity -C_z == sum l_j C_j + sum v_k Q_k and keeps it for later
// sign fixups. Substitutions by equality rows need no events: they cancel
// identically once every slack is mapped back to its constraint form.
class CertTrail {
public:
    CertTrail(std::vector<LinearForm> constraint_forms,
              std::vector<LinearForm> equality_forms = {});

    struct Mults {
        std::map<std::size_t, Rational> ineq;
        std::map<std::size_t, Rational> eq;
    };

    // The slack was fixed to zero; `conic` are nonnegative coefficients with
    // -a_z == sum conic[a_j] * a_j modulo the current equality system.
    void record_zero(Variable slack, const ConicCoeffs& conic);

    // Resolves base == sum mu_i C_i + sum nu_k Q_k with mu >= 0, given the
    // final conic coefficients of the transformed objective. Throws
    // internal_error when the identity cannot be closed (soundness bug).
    Mults assemble(const LinearForm& base, const ConicCoeffs& conic) const;

    const std::vector<LinearForm>& constraint_forms() const { return cforms_; }
    const std::vector<LinearForm>& equality_forms() const { return qforms_; }
    std::size_t zero_event_count() const { return events_.size(); }

private:
    struct ZeroEvent {
        std::size_t constraint;  // index of the zeroed constraint
        Mults fix;               // -C_z == sum fix.ineq * C + sum fix.eq * Q
    };

    std::size_t constraint_index(Variable slack) const;

    std::vector<LinearForm> cforms_;
    std::vector<LinearForm> qforms_;
    std::vector<ZeroEvent> events_;
    SpanSolver span_;  // sources: equality forms, then zeroed constraint forms
};

}  // namespace geitip
