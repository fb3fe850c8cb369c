#pragma once

#include <string>
#include <vector>

namespace roadfield {

/// Exchange distribution along the y-axis: an optional Dirac atom at y = 0
/// plus an even, nonnegative, compactly supported continuous part.
///
/// The continuous part is stored on its own uniform half-grid
/// y_i = i * spacing, i = 0..n-1 (evenness is enforced by storing y >= 0
/// only) and evaluated by linear interpolation. Closed-form shapes are
/// normalised analytically and then sampled at halfwidth/256 resolution.
class Kernel {
public:
    enum class Shape { atom_only, boxcar, triangle, raised_cosine, table };

    /// The designated zero kernel (no atom, no continuous part).
    static Kernel zero();
    static Kernel pure_atom(double weight);
    static Kernel boxcar(double halfwidth, double mass);
    static Kernel triangle(double halfwidth, double mass);
    static Kernel raised_cosine(double halfwidth, double mass);

    /// Sampled even table given by its y >= 0 half. Optional target mass
    /// rescales the continuous part so that mass() hits the target.
    static Kernel from_samples(double spacing, std::vector<double> half_values,
                               double atom = 0.0);
    static Kernel from_samples_rescaled(double spacing, std::vector<double> half_values,
                                        double target_mass, double atom = 0.0);

    /// Full symmetric table (odd length, centre sample at y = 0).
    /// Rejects tables that are not even.
    static Kernel from_full_samples(double spacing, const std::vector<double>& values,
                                    double atom = 0.0);

    double atom() const { return atom_; }
    bool has_atom() const { return atom_ > 0.0; }
    bool has_cont() const { return cont_mass_ > 0.0; }
    bool is_zero() const { return atom_ == 0.0 && cont_mass_ == 0.0; }

    /// Smallest R such that the continuous part vanishes outside [-R, R].
    double support_radius() const { return support_; }
    double spacing() const { return spacing_; }
    const std::vector<double>& half_samples() const { return values_; }

    /// atom + integral of the continuous part (trapezoid on the stored grid).
    double mass() const { return atom_ + cont_mass_; }
    double cont_mass() const { return cont_mass_; }
    double cont_max() const { return cont_max_; }

    /// Continuous part at y (linear interpolation; even; 0 outside support).
    double cont(double y) const;

    Shape shape() const { return shape_; }
    double shape_halfwidth() const { return shape_halfwidth_; }

private:
    Kernel() = default;
    void finish();  // derives support/mass/max from the table

    double atom_ = 0.0;
    Shape shape_ = Shape::atom_only;
    double shape_halfwidth_ = 0.0;
    double spacing_ = 0.0;
    std::vector<double> values_;
    double support_ = 0.0;
    double cont_mass_ = 0.0;
    double cont_max_ = 0.0;
};

/// Mollifier scaling y -> (1/eps) k(y/eps). Mass preserved, support scaled.
/// Rejects atom-bearing kernels.
Kernel mollify(const Kernel& k, double eps);

/// (1-eps) delta_0 + eps * upsilon for a unit-mass continuous upsilon.
Kernel mix_with_atom(const Kernel& upsilon, double eps);

const char* to_string(Kernel::Shape s);

}  // namespace roadfield
