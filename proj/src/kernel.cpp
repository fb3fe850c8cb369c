#include "roadfield/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "roadfield/errors.hpp"

namespace roadfield {

namespace {

constexpr int kShapeSamplesPerHalf = 256;

void check_halfwidth_mass(double halfwidth, double mass) {
    if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
        throw validation_error("kernel shape: halfwidth must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw validation_error("kernel shape: target mass must be positive");
}

}  // namespace

void Kernel::finish() {
    if (atom_ < 0.0 || !std::isfinite(atom_))
        throw validation_error("kernel: atom weight must be nonnegative");
    for (double v : values_) {
        if (v < 0.0 || !std::isfinite(v))
            throw validation_error("kernel: negative or non-finite sample");
    }
    // trim knowledge of trailing zeros into the support radius
    long last_nonzero = -1;
    for (long i = 0; i < static_cast<long>(values_.size()); ++i)
        if (values_[static_cast<size_t>(i)] > 0.0) last_nonzero = i;
    if (last_nonzero < 0) {
        values_.clear();
        spacing_ = 0.0;
        support_ = 0.0;
        cont_mass_ = 0.0;
        cont_max_ = 0.0;
        if (shape_ != Shape::atom_only && atom_ == 0.0) shape_ = Shape::atom_only;
        return;
    }
    const long n = static_cast<long>(values_.size());
    support_ = spacing_ * static_cast<double>(std::min(n - 1, last_nonzero + 1));
    double half = 0.0;
    for (long i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        half += w * values_[static_cast<size_t>(i)];
    }
    cont_mass_ = 2.0 * spacing_ * half;
    cont_max_ = *std::max_element(values_.begin(), values_.end());
}

Kernel Kernel::zero() {
    Kernel k;
    return k;
}

Kernel Kernel::pure_atom(double weight) {
    if (weight < 0.0 || !std::isfinite(weight))
        throw validation_error("pure_atom: weight must be nonnegative");
    Kernel k;
    k.atom_ = weight;
    k.shape_ = Shape::atom_only;
    return k;
}

Kernel Kernel::boxcar(double halfwidth, double mass) {
    check_halfwidth_mass(halfwidth, mass);
    const double height = mass / (2.0 * halfwidth);
    Kernel k;
    k.shape_ = Shape::boxcar;
    k.shape_halfwidth_ = halfwidth;
    k.spacing_ = halfwidth / kShapeSamplesPerHalf;
    k.values_.assign(kShapeSamplesPerHalf + 1, height);
    k.finish();
    return k;
}

Kernel Kernel::triangle(double halfwidth, double mass) {
    check_halfwidth_mass(halfwidth, mass);
    const double peak = mass / halfwidth;  // area = halfwidth * peak
    Kernel k;
    k.shape_ = Shape::triangle;
    k.shape_halfwidth_ = halfwidth;
    k.spacing_ = halfwidth / kShapeSamplesPerHalf;
    k.values_.resize(kShapeSamplesPerHalf + 1);
    for (int i = 0; i <= kShapeSamplesPerHalf; ++i) {
        double y = static_cast<double>(i) / kShapeSamplesPerHalf;
        k.values_[static_cast<size_t>(i)] = peak * (1.0 - y);
    }
    k.finish();
    return k;
}

Kernel Kernel::raised_cosine(double halfwidth, double mass) {
    check_halfwidth_mass(halfwidth, mass);
    const double amp = mass / (2.0 * halfwidth);
    Kernel k;
    k.shape_ = Shape::raised_cosine;
    k.shape_halfwidth_ = halfwidth;
    k.spacing_ = halfwidth / kShapeSamplesPerHalf;
    k.values_.resize(kShapeSamplesPerHalf + 1);
    for (int i = 0; i <= kShapeSamplesPerHalf; ++i) {
        double y = static_cast<double>(i) / kShapeSamplesPerHalf;
        k.values_[static_cast<size_t>(i)] = amp * (1.0 + std::cos(std::numbers::pi * y));
    }
    k.finish();
    return k;
}

Kernel Kernel::from_samples(double spacing, std::vector<double> half_values, double atom) {
    if (!half_values.empty() && (!(spacing > 0.0) || !std::isfinite(spacing)))
        throw validation_error("from_samples: spacing must be positive");
    Kernel k;
    k.shape_ = Shape::table;
    k.atom_ = atom;
    k.spacing_ = spacing;
    k.values_ = std::move(half_values);
    k.finish();
    if (k.values_.empty() && atom == 0.0) k.shape_ = Shape::atom_only;
    return k;
}

Kernel Kernel::from_samples_rescaled(double spacing, std::vector<double> half_values,
                                     double target_mass, double atom) {
    Kernel k = from_samples(spacing, std::move(half_values), atom);
    if (!(target_mass > 0.0))
        throw validation_error("from_samples_rescaled: target mass must be positive");
    double want_cont = target_mass - k.atom_;
    if (want_cont < 0.0)
        throw validation_error("from_samples_rescaled: target mass below atom weight");
    if (k.cont_mass_ <= 0.0) {
        if (want_cont > 0.0)
            throw validation_error("from_samples_rescaled: cannot rescale an empty table");
        return k;
    }
    double scale = want_cont / k.cont_mass_;
    for (double& v : k.values_) v *= scale;
    k.finish();
    return k;
}

Kernel Kernel::from_full_samples(double spacing, const std::vector<double>& values, double atom) {
    if (values.size() % 2 == 0)
        throw validation_error("from_full_samples: table length must be odd (centre at y=0)");
    const size_t n = values.size();
    const size_t mid = n / 2;
    for (size_t i = 0; i < mid; ++i) {
        double a = values[mid - 1 - i];
        double b = values[mid + 1 + i];
        double scale = std::max({std::abs(a), std::abs(b), 1.0});
        if (std::abs(a - b) > 1e-12 * scale)
            throw validation_error("from_full_samples: table is not even");
    }
    std::vector<double> half(values.begin() + static_cast<long>(mid), values.end());
    return from_samples(spacing, std::move(half), atom);
}

double Kernel::cont(double y) const {
    if (values_.empty()) return 0.0;
    double a = std::abs(y);
    if (a > support_) return 0.0;
    double t = a / spacing_;
    auto i = static_cast<size_t>(t);
    if (i >= values_.size() - 1) return values_.back();
    double frac = t - static_cast<double>(i);
    return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
}

Kernel mollify(const Kernel& k, double eps) {
    if (k.has_atom())
        throw validation_error("mollify: atom-bearing kernels are not scalable");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw validation_error("mollify: eps must be positive");
    switch (k.shape()) {
        case Kernel::Shape::boxcar:
            return Kernel::boxcar(k.shape_halfwidth() * eps, k.cont_mass());
        case Kernel::Shape::triangle:
            return Kernel::triangle(k.shape_halfwidth() * eps, k.cont_mass());
        case Kernel::Shape::raised_cosine:
            return Kernel::raised_cosine(k.shape_halfwidth() * eps, k.cont_mass());
        default: {
            std::vector<double> v = k.half_samples();
            for (double& x : v) x /= eps;
            return Kernel::from_samples(k.spacing() * eps, std::move(v));
        }
    }
}

Kernel mix_with_atom(const Kernel& upsilon, double eps) {
    if (upsilon.has_atom())
        throw validation_error("mix_with_atom: upsilon must be purely continuous");
    if (std::abs(upsilon.mass() - 1.0) > 1e-8)
        throw validation_error("mix_with_atom: upsilon must have unit mass");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw validation_error("mix_with_atom: eps must lie in [0, 1]");
    if (eps == 0.0) return Kernel::pure_atom(1.0);
    if (eps == 1.0) return upsilon;
    std::vector<double> v = upsilon.half_samples();
    for (double& x : v) x *= eps;
    return Kernel::from_samples(upsilon.spacing(), std::move(v), 1.0 - eps);
}

const char* to_string(Kernel::Shape s) {
    switch (s) {
        case Kernel::Shape::atom_only: return "atom";
        case Kernel::Shape::boxcar: return "boxcar";
        case Kernel::Shape::triangle: return "triangle";
        case Kernel::Shape::raised_cosine: return "raised_cosine";
        case Kernel::Shape::table: return "table";
    }
    return "?";
}

}  // namespace roadfield
