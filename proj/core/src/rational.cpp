#include "k3forms/rational.hpp"
#include "k3forms/errors.hpp"

namespace k3 {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw InputError("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

} // namespace k3
