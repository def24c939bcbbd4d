#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace subriem::ccmetric {

/// Real polynomial in n variables, stored as exponent vector -> coefficient.
class Polynomial {
public:
    using Exponent = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : n_(nvars) {}

    static Polynomial constant(int nvars, double c);
    static Polynomial variable(int nvars, int i);
    /// Uniform coefficients in [-1,1] on every monomial of total degree <= degree.
    static Polynomial random(int nvars, int degree, std::mt19937_64& rng);

    int nvars() const noexcept { return n_; }
    const std::map<Exponent, double>& terms() const noexcept { return terms_; }
    void add_term(const Exponent& e, double c);

    double operator()(const Eigen::VectorXd& x) const;
    Polynomial derivative(int i) const;
    int degree() const;
    /// Largest |coefficient|.
    double max_coeff() const;
    bool is_zero(double tol = 0.0) const { return max_coeff() <= tol; }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

private:
    void check(const Polynomial& o) const;
    int n_ = 0;
    std::map<Exponent, double> terms_;
};

/// Vector field with polynomial components.
using PolyField = std::vector<Polynomial>;

/// Sum_i P_i d_i f.
Polynomial apply_field(const PolyField& field, const Polynomial& f);

} // namespace subriem::ccmetric
