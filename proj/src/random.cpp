#include "qskew/random.hpp"

namespace qskew {

long Rng::integer(long lo, long hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng_() % span);
}

Q Rng::rational(long range, long denominators)
{
    Q q(integer(-range, range), integer(1, denominators));
    q.canonicalize();
    return q;
}

Q Rng::nonzero_rational(long range, long denominators)
{
    for (;;) {
        Q q = rational(range, denominators);
        if (sgn(q) != 0) return q;
    }
}

double Rng::real(double lo, double hi)
{
    double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Vec Rng::vector(int dim, long range, long denominators)
{
    Vec v(static_cast<std::size_t>(dim));
    for (auto& x : v) x = rational(range, denominators);
    return v;
}

} // namespace qskew
