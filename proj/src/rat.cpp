#include "kn/rat.hpp"

#include <ostream>

namespace kn {

Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat::parse: empty string");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat::parse: bad rational '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rat::parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rat(q);
}

Rat Rat::pow(long e) const {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? *this : inverse();
    unsigned long k = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.v_.get_den().get_mpz_t(), k);
    mpq_class q(n, d);  // base canonical => power canonical
    return Rat(q);
}

std::string Rat::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

}  // namespace kn
