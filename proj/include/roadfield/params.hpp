#pragma once

#include <cmath>

#include "roadfield/errors.hpp"

namespace roadfield {

/// Scalar model constants shared by every solver.
///
/// d      field diffusivity (length^2/time)
/// big_d  road diffusivity D
/// growth linearised reaction rate f'(0)
/// mu_bar total road->field exchange rate
/// nu_bar total field->road exchange rate
struct Params {
    double d = 1.0;
    double big_d = 1.0;
    double growth = 1.0;
    double mu_bar = 1.0;
    double nu_bar = 1.0;

    /// Classical KPP spreading speed of the field alone, 2*sqrt(d*f'(0)).
    double c_kpp() const { return 2.0 * std::sqrt(d * growth); }

    void validate() const {
        auto bad = [](double x) { return !(x > 0.0) || !std::isfinite(x); };
        if (bad(d) || bad(big_d) || bad(growth) || bad(mu_bar) || bad(nu_bar))
            throw validation_error("Params: all five constants must be finite and strictly positive");
    }
};

}  // namespace roadfield
