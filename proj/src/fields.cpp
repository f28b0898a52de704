#include "roughcocycle/fields.hpp"

#include <cmath>
#include <map>

namespace rough {

namespace {

VectorField make_sincos2d() {
    VectorField vf;
    vf.name = "sincos2d";
    vf.d = 2;
    vf.m = 2;
    vf.f = [](const double* y, double* f) {
        f[0] = 0.8 * std::sin(y[0] + 2.0 * y[1]);  // f11
        f[1] = 0.5 * std::cos(y[1]);               // f12
        f[2] = 0.7 * std::cos(y[0] - y[1]);        // f21
        f[3] = 0.6 * std::sin(2.0 * y[0] + y[1]);  // f22
    };
    vf.df = [](const double* y, double* df) {
        // layout: df[(i*m+j)*d + k] = d f_ij / d y_k
        double c11 = 0.8 * std::cos(y[0] + 2.0 * y[1]);
        double s12 = -0.5 * std::sin(y[1]);
        double s21 = -0.7 * std::sin(y[0] - y[1]);
        double c22 = 0.6 * std::cos(2.0 * y[0] + y[1]);
        df[0] = c11;        // f11 / y1
        df[1] = 2.0 * c11;  // f11 / y2
        df[2] = 0.0;        // f12 / y1
        df[3] = s12;        // f12 / y2
        df[4] = s21;        // f21 / y1
        df[5] = -s21;       // f21 / y2
        df[6] = 2.0 * c22;  // f22 / y1
        df[7] = c22;        // f22 / y2
    };
    vf.bound_f = 0.8;
    vf.bound_df = 1.6;
    vf.bound_d2f = 3.2;
    return vf;
}

VectorField make_const1d() {
    VectorField vf;
    vf.name = "const1d";
    vf.d = 1;
    vf.m = 1;
    vf.f = [](const double*, double* f) { f[0] = 0.7; };
    vf.df = [](const double*, double* df) { df[0] = 0.0; };
    vf.bound_f = 0.7;
    return vf;
}

VectorField make_const2d() {
    VectorField vf;
    vf.name = "const2d";
    vf.d = 2;
    vf.m = 2;
    vf.f = [](const double*, double* f) {
        f[0] = 0.6;
        f[1] = -0.3;
        f[2] = 0.2;
        f[3] = 0.5;
    };
    vf.df = [](const double*, double* df) {
        for (int e = 0; e < 8; ++e) df[e] = 0.0;
    };
    vf.bound_f = 0.6;
    return vf;
}

VectorField make_linear1d() {
    VectorField vf;
    vf.name = "linear1d";
    vf.d = 1;
    vf.m = 1;
    vf.f = [](const double* y, double* f) { f[0] = y[0]; };
    vf.df = [](const double*, double* df) { df[0] = 1.0; };
    return vf;
}

const std::map<std::string, VectorField>& registry() {
    static const std::map<std::string, VectorField> reg = [] {
        std::map<std::string, VectorField> r;
        r.emplace("sincos2d", make_sincos2d());
        r.emplace("const1d", make_const1d());
        r.emplace("const2d", make_const2d());
        r.emplace("linear1d", make_linear1d());
        return r;
    }();
    return reg;
}

}  // namespace

const VectorField& field_by_name(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end())
        throw std::invalid_argument("field_by_name: unknown field '" + name + "'");
    return it->second;
}

std::vector<std::string> field_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

}  // namespace rough
