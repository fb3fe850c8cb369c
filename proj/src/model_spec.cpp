#include "roadfield/model_spec.hpp"

#include <cmath>
#include <string>

#include "roadfield/errors.hpp"

namespace roadfield {

const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::limit: return "limit";
        case ModelKind::full_nonlocal: return "full_nonlocal";
        case ModelKind::semi_limit_nu_nonlocal: return "semi_limit_nu_nonlocal";
        case ModelKind::semi_limit_mu_nonlocal: return "semi_limit_mu_nonlocal";
        case ModelKind::mixture: return "mixture";
    }
    return "?";
}

void ModelSpec::validate_masses(const Params& p, double rel_tol) const {
    auto check = [&](const Kernel& k, double bar, const char* name) {
        if (k.is_zero()) return;
        if (std::abs(k.mass() - bar) > rel_tol * std::max(1.0, bar))
            throw validation_error(std::string("ModelSpec: mass of ") + name +
                                   " kernel does not match its scalar rate");
    };
    check(nu, p.nu_bar, "nu");
    check(mu, p.mu_bar, "mu");
}

}  // namespace roadfield
