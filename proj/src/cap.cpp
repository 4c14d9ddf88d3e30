#include "tdual/cap.hpp"

#include "tdual/error.hpp"
#include "tdual/hash.hpp"

namespace tdual {

Simplex face_restriction(const Simplex& s, const std::vector<int>& positions)
{
    Simplex out;
    int last = -1;
    for (int i : positions) {
        if (i <= last || i >= static_cast<int>(s.size()))
            throw Error(ErrorKind::BadIndices, "face positions must increase strictly within the simplex");
        out.push_back(s[i]);
        last = i;
    }
    if (out.empty())
        throw Error(ErrorKind::BadIndices, "empty face");
    return out;
}

namespace {

std::vector<int> range(int from, int to)
{
    std::vector<int> r;
    for (int i = from; i <= to; ++i)
        r.push_back(i);
    return r;
}

void check_compatible(const LocalSystem& g, const LocalSystem& h)
{
    if (g.base() != h.base() && !(*g.base() == *h.base()))
        throw Error(ErrorKind::BaseMismatch, "cochain and chain live on different complexes");
    if (!(g.ring() == h.ring()))
        throw Error(ErrorKind::RingMismatch, "cochain and chain use different rings");
}

std::size_t module_size(const LocalSystem& s, int k)
{
    if (k < 0 || k > s.base()->dimension())
        return 0;
    return s.base()->count(k) * s.rank();
}

} // namespace

ExactMatrix cap_matrix(const LocalSystem& g, int k, const LocalSystem& h, const ExactMatrix& a, int q)
{
    check_compatible(g, h);
    const auto& m = *g.base();
    if (k < 0 || q < k || q > m.dimension())
        throw Error(ErrorKind::DegreeMismatch, "cannot cap a " + std::to_string(k) + "-cochain with a " +
                                                   std::to_string(q) + "-chain");
    if (a.rows() != module_size(h, q) || a.cols() != 1)
        throw Error(ErrorKind::DegreeMismatch, "chain has the wrong size for degree " + std::to_string(q));
    const std::size_t rg = g.rank(), rh = h.rank();
    const int p = q - k;
    ExactMatrix out(g.ring(), m.count(p) * rg * rh, m.count(k) * rg);
    const auto back_positions = range(p, q), front_positions = range(0, p);
    for (std::size_t i = 0; i < m.count(q); ++i) {
        bool any = false;
        for (std::size_t b = 0; b < rh && !any; ++b)
            any = a.at(i * rh + b, 0) != 0;
        if (!any)
            continue;
        const Simplex& s = m.simplex(q, i);
        const std::size_t back = m.index(face_restriction(s, back_positions));
        const std::size_t front = m.index(face_restriction(s, front_positions));
        ExactMatrix t = ExactMatrix::identity(g.ring(), rg);
        for (int j = 0; j < p; ++j)
            t = t * g.transport(s[j], s[j + 1]);
        for (std::size_t b = 0; b < rh; ++b) {
            const Rational coeff = a.at(i * rh + b, 0);
            if (coeff == 0)
                continue;
            for (std::size_t x = 0; x < rg; ++x)
                for (std::size_t y = 0; y < rg; ++y) {
                    Rational v = t.at(x, y);
                    if (v != 0)
                        out.add_to((front * rg + x) * rh + b, back * rg + y, v * coeff);
                }
        }
    }
    return out;
}

ExactMatrix cap_chain(const LocalSystem& g, const ExactMatrix& c, int k, const LocalSystem& h, const ExactMatrix& a, int q)
{
    if (c.rows() != module_size(g, k) || c.cols() != 1)
        throw Error(ErrorKind::DegreeMismatch, "cochain has the wrong size for degree " + std::to_string(k));
    return cap_matrix(g, k, h, a, q) * c;
}

IdentityCheck boundary_identity_check(const LocalSystem& g, const ExactMatrix& c, int k, const LocalSystem& h,
                                      const ExactMatrix& a, int q)
{
    check_compatible(g, h);
    const LocalSystem gh = tensor(g, h);
    const int d = q - k - 1;
    ExactMatrix diff(g.ring(), module_size(gh, d), 1);
    if (d >= 0) {
        auto tensor_chains = TwistedComplex::absolute(gh);
        diff = tensor_chains.boundary(q - k) * cap_chain(g, c, k, h, a, q);
        auto da = TwistedComplex::absolute(h).boundary(q) * a;
        diff = diff - cap_chain(g, c, k, h, da, q - 1);
        auto dc = TwistedComplex::absolute(g, q).coboundary(k) * c;
        diff = diff + cap_chain(g, dc, k + 1, h, a, q);
    } else {
        cap_chain(g, c, k, h, a, q); // validates the inputs
    }
    IdentityCheck r;
    r.holds = diff.is_zero();
    r.difference = std::move(diff);
    return r;
}

ExactMatrix relative_cap(const LocalSystem& g, const ExactMatrix& c, int k, const FullSubcomplex& kset,
                         const LocalSystem& h, const ExactMatrix& a)
{
    check_compatible(g, h);
    const int n = g.base()->dimension();
    if (c.rows() != module_size(g, k) || c.cols() != 1)
        throw Error(ErrorKind::DegreeMismatch, "cochain has the wrong size for degree " + std::to_string(k));
    auto rel_g = TwistedComplex::relative(g, kset);
    auto c_rel = rel_g.from_ambient(k, c);
    if (!(rel_g.to_ambient(k, c_rel) == c))
        throw Error(ErrorKind::NotRelativeCocycle, "cochain does not vanish on the complement");
    if (!(rel_g.coboundary(k) * c_rel).is_zero())
        throw Error(ErrorKind::NotRelativeCocycle, "cochain is not a cocycle");
    auto rel_h = TwistedComplex::relative(h, kset);
    if (a.rows() != rel_h.dimension(n) || a.cols() != 1)
        throw Error(ErrorKind::DegreeMismatch, "relative chain has the wrong size");
    if (!(rel_h.boundary(n) * a).is_zero())
        throw Error(ErrorKind::NotACycle, "chain is not a relative cycle");
    return cap_chain(g, c, k, h, rel_h.to_ambient(n, a), n);
}

bool DualityReport::all_isomorphisms() const
{
    for (const auto& r : rows)
        if (!r.is_isomorphism())
            return false;
    return true;
}

Table DualityReport::table() const
{
    Table t;
    t.columns = {"degree", "left", "right", "verdict", "certificate"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.degree), r.left.to_string(), r.right.to_string(),
                          r.is_isomorphism() ? "true" : "false", r.certificate_hash});
    return t;
}

namespace {

std::string certificate_hash(const DualityRow& r)
{
    std::uint64_t h = fnv1a64(std::to_string(r.degree));
    h = fnv1a64(r.left.to_string(), h);
    h = fnv1a64(r.right.to_string(), h);
    h = fnv1a64(r.map.matrix().to_string(), h);
    h = fnv1a64(r.certificate.injective ? "i" : "-", h);
    h = fnv1a64(r.certificate.surjective ? "s" : "-", h);
    if (r.certificate.inverse)
        h = fnv1a64(r.certificate.inverse->matrix().to_string(), h);
    if (r.certificate.kernel_witness)
        h = fnv1a64(r.certificate.kernel_witness->to_string(), h);
    if (r.certificate.cokernel_witness)
        h = fnv1a64(r.certificate.cokernel_witness->to_string(), h);
    return hex64(h);
}

} // namespace

DualityReport verify_duality(const LocalSystem& g)
{
    const auto& m = g.base();
    if (!validate(*m).closed_pseudomanifold())
        throw Error(ErrorKind::NotClosedPseudomanifold, "duality needs a closed connected pseudomanifold");
    const int n = m->dimension();
    auto nu = fundamental_class_direct(m, g.ring());
    auto cochains = cochain_complex(g);
    auto chains = chain_complex(tensor(g, nu.system));

    DualityReport report;
    report.complex_digest = m->digest();
    report.system_digest = g.digest();
    report.ring = g.ring().name();
    for (int k = 0; k <= n; ++k) {
        DualityRow row;
        row.degree = k;
        row.left = cochains.cohomology(k);
        row.right = chains.homology(n - k);
        row.map = induced_map(cap_matrix(g, k, nu.system, nu.cycle, n), row.left, row.right);
        row.certificate = is_isomorphism(row.map);
        row.certificate_hash = certificate_hash(row);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace tdual
