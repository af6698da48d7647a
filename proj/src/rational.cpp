#include "arrmc/rational.hpp"

#include "arrmc/errors.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace arrmc {

namespace {

bool valid_integer_text(std::string_view s) {
    if (s.empty())
        return false;
    size_t i = 0;
    if (s[0] == '-' || s[0] == '+')
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Scalar parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+')
        throw InputError("malformed rational: '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    mpz_class p(n, 10);
    mpz_class q(std::string(den), 10);
    if (q == 0)
        throw InputError("zero denominator in rational: '" + std::string(text) + "'");
    Scalar r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Scalar& q) { return q.get_str(10); }

bool is_integer(const Scalar& q) { return q.get_den() == 1; }

mpz_class floor(const Scalar& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Scalar frac(const Scalar& q) { return q - Scalar(floor(q)); }

double to_double(const Scalar& q) { return q.get_d(); }

std::complex<double> unit_root(const Scalar& q) {
    // Reduce first so large arguments keep full precision.
    double t = frac(q).get_d();
    return std::polar(1.0, 2.0 * std::numbers::pi * t);
}

} // namespace arrmc
