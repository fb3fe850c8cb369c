#pragma once

#include "roadfield/kernel.hpp"
#include "roadfield/params.hpp"

namespace roadfield {

/// Which of the coupled road--field systems a (nu, mu) pair selects.
enum class ModelKind {
    limit,                   // both exchanges are Dirac atoms
    full_nonlocal,           // both exchanges are continuous
    semi_limit_nu_nonlocal,  // mu atom, nu continuous
    semi_limit_mu_nonlocal,  // nu atom, mu continuous
    mixture,                 // nu carries atom + continuous mass (perturbed family)
};

const char* to_string(ModelKind k);

/// Pair of exchange kernels; the model variant is derived, never stored.
struct ModelSpec {
    Kernel nu;  // field -> road
    Kernel mu;  // road -> field

    ModelKind kind() const {
        const bool nu_atom_only = !nu.has_cont();
        const bool mu_atom_only = !mu.has_cont();
        const bool nu_cont_only = !nu.has_atom();
        const bool mu_cont_only = !mu.has_atom();
        if (nu_atom_only && mu_atom_only) return ModelKind::limit;
        if (nu_cont_only && mu_cont_only) return ModelKind::full_nonlocal;
        if (mu_atom_only && nu_cont_only) return ModelKind::semi_limit_nu_nonlocal;
        if (nu_atom_only && mu_cont_only) return ModelKind::semi_limit_mu_nonlocal;
        return ModelKind::mixture;
    }

    /// Kernel masses must agree with the scalar rates they discretise.
    /// The designated zero kernel is exempt (used for forcing-free probes).
    void validate_masses(const Params& p, double rel_tol = 1e-8) const;
};

}  // namespace roadfield
