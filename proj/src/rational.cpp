#include "fairsched/rational.hpp"

namespace fairsched {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            mpz_class num(text, 10);
            return Rat(num);
        }
        mpz_class num(text.substr(0, slash), 10);
        mpz_class den(text.substr(slash + 1), 10);
        if (den == 0) throw InputError("rational with zero denominator: " + text);
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw InputError("invalid rational literal: '" + text + "'");
    }
}

std::string fraction_string(const Rat& value) { return value.get_str(); }

std::string decimal_string(const Rat& value, int digits) {
    mpz_class num = value.get_num();
    const mpz_class& den = value.get_den();  // canonical, > 0
    const bool negative = num < 0;
    if (negative) num = -num;

    mpz_class pow10 = 1;
    for (int i = 0; i < digits; ++i) pow10 *= 10;

    const mpz_class scaled = num * pow10;
    mpz_class quotient = scaled / den;
    const mpz_class remainder = scaled % den;
    const mpz_class twice = remainder * 2;
    if (twice > den || (twice == den && mpz_odd_p(quotient.get_mpz_t()))) quotient += 1;

    std::string out = negative && quotient != 0 ? "-" : "";
    if (digits == 0) return out + quotient.get_str();
    const mpz_class integral = quotient / pow10;
    const mpz_class fractional = quotient % pow10;
    std::string frac = fractional.get_str();
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    return out + integral.get_str() + "." + frac;
}

}  // namespace fairsched
