#include "roadfield/config_io.hpp"

#include <algorithm>

#include "roadfield/errors.hpp"

namespace roadfield {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    if (!obj.is_object())
        throw validation_error(where + ": expected an object");
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known)
            throw validation_error(where + ": unknown key '" + item.key() + "'");
    }
}

namespace {

double require_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw validation_error(where + ": missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

}  // namespace

json params_to_json(const Params& p) {
    return json{{"d", p.d}, {"big_d", p.big_d}, {"growth", p.growth},
                {"mu_bar", p.mu_bar}, {"nu_bar", p.nu_bar}};
}

Params params_from_json(const json& j) {
    reject_unknown_keys(j, {"d", "big_d", "growth", "mu_bar", "nu_bar"}, "params");
    Params p;
    p.d = require_number(j, "d", "params");
    p.big_d = require_number(j, "big_d", "params");
    p.growth = require_number(j, "growth", "params");
    p.mu_bar = require_number(j, "mu_bar", "params");
    p.nu_bar = require_number(j, "nu_bar", "params");
    p.validate();
    return p;
}

json kernel_to_json(const Kernel& k) {
    json j = json::object();
    if (k.atom() != 0.0 || k.is_zero()) j["atom"] = k.atom();
    switch (k.shape()) {
        case Kernel::Shape::atom_only:
            if (!j.contains("atom")) j["atom"] = k.atom();
            break;
        case Kernel::Shape::boxcar:
        case Kernel::Shape::triangle:
        case Kernel::Shape::raised_cosine:
            j["shape"] = to_string(k.shape());
            j["halfwidth"] = k.shape_halfwidth();
            j["mass"] = k.cont_mass();
            break;
        case Kernel::Shape::table:
            if (k.has_cont())
                j["samples"] = json{{"spacing", k.spacing()}, {"values", k.half_samples()}};
            else if (!j.contains("atom"))
                j["atom"] = k.atom();
            break;
    }
    return j;
}

Kernel kernel_from_json(const json& j) {
    reject_unknown_keys(j, {"atom", "shape", "halfwidth", "mass", "samples"}, "kernel");
    const double atom = j.contains("atom") ? require_number(j, "atom", "kernel") : 0.0;

    if (j.contains("shape")) {
        if (j.contains("samples"))
            throw validation_error("kernel: give either a shape or a sample table, not both");
        const std::string shape = j.at("shape").get<std::string>();
        const double hw = require_number(j, "halfwidth", "kernel");
        const double mass = require_number(j, "mass", "kernel");
        Kernel cont = [&] {
            if (shape == "boxcar") return Kernel::boxcar(hw, mass);
            if (shape == "triangle") return Kernel::triangle(hw, mass);
            if (shape == "raised_cosine") return Kernel::raised_cosine(hw, mass);
            throw validation_error("kernel: unknown shape '" + shape + "'");
        }();
        if (atom == 0.0) return cont;
        return Kernel::from_samples(cont.spacing(), cont.half_samples(), atom);
    }
    if (j.contains("samples")) {
        const json& s = j.at("samples");
        reject_unknown_keys(s, {"spacing", "values", "full_values"}, "kernel.samples");
        const double spacing = require_number(s, "spacing", "kernel.samples");
        if (s.contains("values") == s.contains("full_values"))
            throw validation_error("kernel.samples: give exactly one of values/full_values");
        if (s.contains("values"))
            return Kernel::from_samples(spacing, s.at("values").get<std::vector<double>>(), atom);
        return Kernel::from_full_samples(spacing, s.at("full_values").get<std::vector<double>>(),
                                         atom);
    }
    if (!j.contains("atom"))
        throw validation_error("kernel: need an atom weight, a shape, or a sample table");
    return Kernel::pure_atom(atom);
}

}  // namespace roadfield
