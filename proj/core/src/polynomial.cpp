#include "subriem/ccmetric/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "subriem/errors.hpp"

namespace subriem::ccmetric {

Polynomial Polynomial::constant(int nvars, double c)
{
    Polynomial p(nvars);
    p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int i)
{
    if (i < 0 || i >= nvars)
        throw IndexError("variable index out of range");
    Polynomial p(nvars);
    Exponent e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, 1.0);
    return p;
}

Polynomial Polynomial::random(int nvars, int degree, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    Polynomial p(nvars);
    Exponent e(static_cast<std::size_t>(nvars), 0);
    // Odometer over exponents with total degree <= degree.
    while (true) {
        p.add_term(e, coeff(rng));
        int i = nvars - 1;
        while (i >= 0) {
            ++e[static_cast<std::size_t>(i)];
            int total = 0;
            for (int v : e)
                total += v;
            if (total <= degree)
                break;
            e[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0)
            break;
    }
    return p;
}

void Polynomial::add_term(const Exponent& e, double c)
{
    if (static_cast<int>(e.size()) != n_)
        throw MalformedInput("exponent length does not match the variable count");
    if (c == 0.0)
        return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0)
            terms_.erase(it);
    }
}

void Polynomial::check(const Polynomial& o) const
{
    if (o.n_ != n_)
        throw MalformedInput("polynomials live in different variable counts");
}

double Polynomial::operator()(const Eigen::VectorXd& x) const
{
    if (x.size() != n_)
        throw MalformedInput("evaluation point has the wrong dimension");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k)
                t *= x[i];
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::derivative(int i) const
{
    Polynomial out(n_);
    for (const auto& [exp, c] : terms_) {
        const int k = exp[static_cast<std::size_t>(i)];
        if (k == 0)
            continue;
        Exponent e = exp;
        e[static_cast<std::size_t>(i)] = k - 1;
        out.add_term(e, c * k);
    }
    return out;
}

int Polynomial::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int v : e)
            t += v;
        d = std::max(d, t);
    }
    return d;
}

double Polynomial::max_coeff() const
{
    double m = 0.0;
    for (const auto& [e, c] : terms_)
        m = std::max(m, std::abs(c));
    return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    check(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    check(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(double s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_)
        c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    a.check(b);
    Polynomial out(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Polynomial::Exponent e = ea;
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        os << (first ? "" : " + ") << c;
        first = false;
        for (int i = 0; i < n_; ++i) {
            const int k = e[static_cast<std::size_t>(i)];
            if (k > 0)
                os << "*x" << i + 1 << (k > 1 ? "^" + std::to_string(k) : "");
        }
    }
    return os.str();
}

Polynomial apply_field(const PolyField& field, const Polynomial& f)
{
    Polynomial out(f.nvars());
    for (int i = 0; i < static_cast<int>(field.size()); ++i) {
        if (field[static_cast<std::size_t>(i)].terms().empty())
            continue;
        out += field[static_cast<std::size_t>(i)] * f.derivative(i);
    }
    return out;
}

} // namespace subriem::ccmetric
