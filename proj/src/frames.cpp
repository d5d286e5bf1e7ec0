#include "btexp/frames.hpp"

#include "btexp/geometry.hpp"

namespace btexp {

NormalTransform identity_transform(int n)
{
    NormalTransform t;
    t.gauge = Jet::zero(n);
    t.linear.assign(static_cast<std::size_t>(n), std::vector<PiScalar>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j) {
        t.linear[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = PiScalar(1L);
        t.higher.push_back(Jet::z(n, j));
    }
    return t;
}

NormalFrame fock_frame(const std::vector<PiScalar>& lambda)
{
    const int n = static_cast<int>(lambda.size());
    if (n < 1 || n > kMaxVars) throw DomainError("fock_frame: dimension out of range");
    for (const auto& l : lambda)
        if (!l.is_monomial() || !l.is_real() || l.real_sign() <= 0)
            throw DomainError("fock_frame: lambda must be a positive rational multiple of a power of pi");
    NormalFrame fr;
    fr.n = n;
    fr.lambda = lambda;
    fr.phi1 = Jet::zero(n);
    fr.theta = JetMatrix::identity(n, n);
    fr.transform = identity_transform(n);
    return fr;
}

NormalFrame flat_frame(int n, const PiScalar& lambda)
{
    return fock_frame(std::vector<PiScalar>(static_cast<std::size_t>(n), lambda));
}

namespace {

Jet cp1_potential(int order)
{
    const Bidegree t{order, order};
    const Jet q = jet_scale(Jet::z(1, 0) * Jet::zbar(1, 0), PiScalar::pi(1) * Rational(2));
    const Jet one_plus = jet_truncate(Jet::constant(1, PiScalar(1L)) + q, t);
    return jet_scale(jet_log(one_plus), PiScalar::ratio(1, 2));
}

} // namespace

Jet cp1_t(int order)
{
    const Bidegree t{order, order};
    const Jet q = jet_scale(Jet::z(1, 0) * Jet::zbar(1, 0), PiScalar::pi(1) * Rational(2));
    return jet_truncate(q * jet_inverse(jet_truncate(Jet::constant(1, PiScalar(1L)) + q, t)), t);
}

NormalFrame polarize(const NormalFrame& frame)
{
    NormalFrame fr = frame;
    const Jet phi = full_weight(frame);
    for (int j = 0; j < frame.n; ++j)
        for (int k = 0; k < frame.n; ++k)
            fr.theta(j, k) =
                jet_scale(jet_diff(jet_diff(phi, Var::Z, j), Var::Zbar, k), PiScalar::pi(-1));
    return fr;
}

NormalFrame cp1_frame(int order)
{
    NormalFrame fr = fock_frame({PiScalar::pi(1)});
    fr.phi1 = cp1_potential(order) - jet_scale(Jet::z(1, 0) * Jet::zbar(1, 0), PiScalar::pi(1));
    fr.phi1.declare_valuation({2, 2});
    return polarize(fr);
}

} // namespace btexp
