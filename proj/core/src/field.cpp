#include "ovw/field.hpp"

#include <algorithm>
#include <cmath>

#include "ovw/errors.hpp"

namespace ovw {

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw InputError("field grids differ");
}

}  // namespace

ScalarField::ScalarField(GridSpec grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw InputError("ScalarField: value count does not match grid");
}

ScalarField ScalarField::sample(GridSpec grid, const std::function<double(double, double)>& fn) {
    ScalarField f(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.coord(j);
        for (int i = 0; i < grid.n; ++i) f(i, j) = fn(grid.coord(i), y);
    }
    return f;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::integral() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * grid_.cell_measure();
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    require_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    require_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField out(a.grid());
    for (std::size_t k = 0; k < a.values_.size(); ++k) out.values_[k] = a.values_[k] * b.values_[k];
    return out;
}

ScalarField VectorField2::magnitude() const {
    ScalarField out(grid());
    auto o = out.values();
    auto a = u.values();
    auto b = v.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = std::hypot(a[k], b[k]);
    return out;
}

VectorField2& VectorField2::operator+=(const VectorField2& o) {
    u += o.u;
    v += o.v;
    return *this;
}

VectorField2& VectorField2::operator-=(const VectorField2& o) {
    u -= o.u;
    v -= o.v;
    return *this;
}

VectorField2& VectorField2::operator*=(double s) {
    u *= s;
    v *= s;
    return *this;
}

ScalarField SymTensor2::magnitude() const {
    ScalarField out(grid());
    auto o = out.values();
    auto a = xx.values();
    auto b = xy.values();
    auto c = yy.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = std::sqrt(a[k] * a[k] + 2.0 * b[k] * b[k] + c[k] * c[k]);
    return out;
}

SymTensor2& SymTensor2::operator-=(const SymTensor2& o) {
    xx -= o.xx;
    xy -= o.xy;
    yy -= o.yy;
    return *this;
}

double contract_integral(const SymTensor2& a, const SymTensor2& b) {
    return hadamard(a.xx, b.xx).integral() + 2.0 * hadamard(a.xy, b.xy).integral() +
           hadamard(a.yy, b.yy).integral();
}

double dot_integral(const VectorField2& a, const VectorField2& b) {
    return hadamard(a.u, b.u).integral() + hadamard(a.v, b.v).integral();
}

SymTensor2 sym_outer(const VectorField2& a, const VectorField2& b) {
    SymTensor2 t{hadamard(a.u, b.u), hadamard(a.u, b.v), hadamard(a.v, b.v)};
    t.xy += hadamard(a.v, b.u);
    t.xy *= 0.5;
    return t;
}

}  // namespace ovw
