#include "embedkit/pm_builder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace embedkit {

std::pair<std::uint64_t, unsigned> prime_power_split(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("m must be >= 2");
    std::uint64_t l = 0;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            l = d;
            break;
        }
    if (l == 0) return {m, 1};
    unsigned c = 0;
    std::uint64_t t = m;
    while (t % l == 0) {
        t /= l;
        ++c;
    }
    if (t != 1) throw std::invalid_argument("m = " + std::to_string(m) + " is not a prime power");
    return {l, c};
}

PuncturedCoverSpec PuncturedCoverSpec::make(std::uint64_t p, unsigned a,
                                            std::vector<std::string> punctures,
                                            std::vector<std::size_t> sigma_perm,
                                            std::uint64_t m) {
    if (!is_prime(p)) throw std::invalid_argument("cover spec: p must be prime");
    if (a == 0) throw std::invalid_argument("cover spec: a must be >= 1");
    if (punctures.empty())
        throw std::invalid_argument("cover spec: empty puncture set rejected (r = 0 case)");
    if (sigma_perm.size() != punctures.size())
        throw std::invalid_argument("cover spec: permutation size mismatch");
    auto [l, c] = prime_power_split(m);
    if (l == p) throw std::invalid_argument("cover spec: m must be coprime to p");

    // sort punctures, remap the permutation through the sort
    std::vector<std::size_t> order(punctures.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return punctures[x] < punctures[y]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (punctures[order[i]] == punctures[order[i + 1]])
            throw std::invalid_argument("cover spec: duplicate puncture name");
    std::vector<std::size_t> inv(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = i;

    PuncturedCoverSpec spec;
    spec.p = p;
    spec.a = a;
    spec.l = l;
    spec.c = c;
    spec.punctures.resize(punctures.size());
    spec.sigma_perm.resize(punctures.size());
    std::vector<bool> seen(punctures.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        spec.punctures[i] = punctures[order[i]];
        std::size_t img = sigma_perm[order[i]];
        if (img >= punctures.size()) throw std::invalid_argument("cover spec: permutation index out of range");
        spec.sigma_perm[i] = inv[img];
    }
    for (std::size_t i : spec.sigma_perm) {
        if (seen[i]) throw std::invalid_argument("cover spec: sigma is not a permutation");
        seen[i] = true;
    }
    // cycle lengths must divide p^a
    std::uint64_t pa = 1;
    for (unsigned i = 0; i < a; ++i) pa *= p;
    std::vector<bool> visited(spec.punctures.size(), false);
    for (std::size_t i = 0; i < spec.punctures.size(); ++i) {
        if (visited[i]) continue;
        std::size_t len = 0, j = i;
        do {
            visited[j] = true;
            j = spec.sigma_perm[j];
            ++len;
        } while (j != i);
        if (pa % len != 0)
            throw std::invalid_argument("cover spec: orbit length " + std::to_string(len) +
                                        " does not divide p^a");
    }
    return spec;
}

PmModule build_pm_genus0(const PuncturedCoverSpec& spec) {
    const std::size_t n = spec.punctures.size();
    Modulus mod(spec.l, spec.c);
    const std::size_t rank = n - 1;
    Mat sigma(mod, rank, rank);
    // e_i = s_i - s_0 maps to s_{pi(i)} - s_{pi(0)}
    std::size_t img0 = spec.sigma_perm[0];
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t imgi = spec.sigma_perm[i];
        if (imgi >= 1) sigma.at(i - 1, imgi - 1) = add_mod(sigma.at(i - 1, imgi - 1), 1, mod);
        if (img0 >= 1) sigma.at(i - 1, img0 - 1) = sub_mod(sigma.at(i - 1, img0 - 1), 1, mod);
    }
    PmModule pm;
    pm.module = GModule(spec.p, spec.a, mod, std::move(sigma));
    pm.punctures = spec.punctures;
    pm.sigma_perm = spec.sigma_perm;
    for (std::size_t i = 1; i < n; ++i)
        pm.labels.push_back(spec.punctures[i] + " - " + spec.punctures[0]);
    return pm;
}

namespace {

std::string padded(std::uint64_t v, std::size_t width) {
    std::string s = std::to_string(v);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

}  // namespace

PmModule artin_schreier_example(std::uint64_t p, std::uint64_t m) {
    std::size_t width = std::to_string(p - 1).size();
    std::vector<std::string> punctures;
    std::vector<std::size_t> perm;
    for (std::uint64_t t = 0; t < p; ++t) {
        punctures.push_back("t" + padded(t, width));
        perm.push_back(static_cast<std::size_t>((t + 1) % p));
    }
    punctures.push_back("~inf");
    perm.push_back(p);
    return build_pm_genus0(PuncturedCoverSpec::make(p, 1, punctures, perm, m));
}

PmModule synthetic_module(std::uint64_t p, unsigned a,
                          const std::vector<std::uint64_t>& orbit_sizes, std::uint64_t m) {
    if (orbit_sizes.empty()) throw std::invalid_argument("synthetic_module: need at least one orbit");
    std::uint64_t pa = 1;
    for (unsigned i = 0; i < a; ++i) pa *= p;
    std::vector<std::string> punctures;
    std::vector<std::size_t> perm;
    std::size_t owidth = std::to_string(orbit_sizes.size() - 1).size();
    for (std::size_t k = 0; k < orbit_sizes.size(); ++k) {
        std::uint64_t s = orbit_sizes[k];
        if (s == 0 || pa % s != 0)
            throw std::invalid_argument("synthetic_module: orbit size " + std::to_string(s) +
                                        " does not divide p^a");
        std::size_t base = punctures.size();
        std::size_t width = std::to_string(s - 1).size();
        for (std::uint64_t i = 0; i < s; ++i) {
            punctures.push_back("o" + padded(k, owidth) + "_" + padded(i, width));
            perm.push_back(base + static_cast<std::size_t>((i + 1) % s));
        }
    }
    return build_pm_genus0(PuncturedCoverSpec::make(p, a, punctures, perm, m));
}

Submodule pm_inclusion(const PmModule& pm, const std::vector<std::size_t>& subset) {
    const std::size_t n = pm.punctures.size();
    std::vector<bool> in_s(n, false);
    for (std::size_t i : subset) {
        if (i >= n) throw std::invalid_argument("pm_inclusion: puncture index out of range");
        in_s[i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (in_s[i] && !in_s[pm.sigma_perm[i]])
            throw std::invalid_argument("pm_inclusion: subset not G-stable, puncture " +
                                        pm.punctures[i] + " maps outside");
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < n; ++i)
        if (in_s[i]) pts.push_back(i);
    const Modulus& mod = pm.module.mod;
    const std::size_t rank = pm.module.rank();
    if (pts.size() <= 1) return Submodule{Mat(mod, 0, rank)};
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t j = 1; j < pts.size(); ++j) {
        // coordinates of s_{pts[j]} - s_{pts[0]} in the basis {s_i - s_0}
        std::vector<std::uint64_t> v(rank, 0);
        if (pts[j] >= 1) v[pts[j] - 1] = add_mod(v[pts[j] - 1], 1, mod);
        if (pts[0] >= 1) v[pts[0] - 1] = sub_mod(v[pts[0] - 1], 1, mod);
        rows.push_back(std::move(v));
    }
    Submodule s{howell_form(Mat::from_rows(mod, rows))};
    if (!is_sigma_stable(pm.module, s.basis))
        throw std::logic_error("pm_inclusion: equivariance certificate failed");
    return s;
}

}  // namespace embedkit
