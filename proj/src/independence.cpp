#include "finabel/independence.hpp"

namespace finabel {

namespace {

void require_instance(const std::vector<Distribution>& dists, const FormSystem& fs) {
    if (static_cast<std::int64_t>(dists.size()) != fs.n)
        fail(Errc::invalid_parameters,
             "instance has " + std::to_string(dists.size()) + " distributions for " +
                 std::to_string(fs.n) + " variables");
    for (const Distribution& d : dists)
        if (!(d.group() == fs.group))
            fail(Errc::invalid_parameters, "distribution on " + d.group().str() +
                                               " used with forms over " + fs.group.str());
}

// |base|^exp with an early exit above the cap.
std::int64_t checked_pow(std::int64_t base, std::int64_t exp, std::int64_t cap,
                         const char* what) {
    __int128 v = 1;
    for (std::int64_t t = 0; t < exp; ++t) {
        v *= base;
        if (v > cap)
            fail(Errc::too_large, std::string(what) + " needs " + std::to_string(base) +
                                      "^" + std::to_string(exp) +
                                      " steps, over the cap of " + std::to_string(cap));
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

Distribution pushforward_joint(const std::vector<Distribution>& dists,
                               const FormSystem& fs, std::int64_t step_cap) {
    require_instance(dists, fs);
    const Group& g = fs.group;
    std::size_t n = static_cast<std::size_t>(fs.n);
    std::size_t k = static_cast<std::size_t>(fs.k);
    checked_pow(g.order(), fs.n, step_cap, "pushforward enumeration");
    std::int64_t cells = checked_pow(g.order(), fs.k, step_cap, "joint table");
    Group joint_group = power_group(g, fs.k);

    // Images of every group element under every coefficient, so the scan
    // below only performs group additions.
    std::vector<std::vector<std::vector<Element>>> img(
        n, std::vector<std::vector<Element>>(static_cast<std::size_t>(g.order())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::int64_t xi = 0; xi < g.order(); ++xi) {
            img[i][static_cast<std::size_t>(xi)].reserve(k);
            for (std::size_t j = 0; j < k; ++j)
                img[i][static_cast<std::size_t>(xi)].push_back(
                    fs.coeffs[j][i](g.element_at(xi)));
        }

    std::vector<Cyclo> joint(static_cast<std::size_t>(cells), Cyclo(Rat(0)));
    // Depth-first scan over input tuples, carrying partial form sums and the
    // accumulated product mass per depth.
    std::vector<std::vector<Element>> partial(n + 1, std::vector<Element>(k, g.zero()));
    std::vector<Cyclo> weight(n + 1, Cyclo(1));
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            std::int64_t cell = 0;
            for (std::size_t j = 0; j < k; ++j)
                cell = cell * g.order() + g.index_of(partial[n][j]);
            joint[static_cast<std::size_t>(cell)] += weight[n];
            return;
        }
        for (std::int64_t xi = 0; xi < g.order(); ++xi) {
            const Cyclo& m = dists[depth].pmf()[static_cast<std::size_t>(xi)];
            if (m.is_zero()) continue;
            weight[depth + 1] = weight[depth] * m;
            const auto& im = img[depth][static_cast<std::size_t>(xi)];
            for (std::size_t j = 0; j < k; ++j)
                partial[depth + 1][j] = g.add(partial[depth][j], im[j]);
            self(self, depth + 1);
        }
    };
    rec(rec, 0);
    return make_distribution(joint_group, std::move(joint));
}

IndependenceReport are_independent_pmf(const std::vector<Distribution>& dists,
                                       const FormSystem& fs, std::int64_t step_cap) {
    Distribution joint = pushforward_joint(dists, fs, step_cap);
    const Group& g = fs.group;
    std::size_t k = static_cast<std::size_t>(fs.k);
    std::int64_t cells = joint.group().order();

    std::vector<std::vector<Cyclo>> marginal(
        k, std::vector<Cyclo>(static_cast<std::size_t>(g.order()), Cyclo(Rat(0))));
    for (std::int64_t cell = 0; cell < cells; ++cell) {
        const Cyclo& mass = joint.pmf()[static_cast<std::size_t>(cell)];
        if (mass.is_zero()) continue;
        std::int64_t rest = cell;
        for (std::size_t j = k; j-- > 0;) {
            marginal[j][static_cast<std::size_t>(rest % g.order())] += mass;
            rest /= g.order();
        }
    }

    IndependenceReport report;
    report.method = IndepMethod::pmf;
    for (std::int64_t cell = 0; cell < cells; ++cell) {
        Cyclo product(Rat(1));
        std::int64_t rest = cell;
        std::vector<std::int64_t> idx(k, 0);
        for (std::size_t j = k; j-- > 0;) {
            idx[j] = rest % g.order();
            rest /= g.order();
        }
        for (std::size_t j = 0; j < k; ++j)
            product *= marginal[j][static_cast<std::size_t>(idx[j])];
        const Cyclo& mass = joint.pmf()[static_cast<std::size_t>(cell)];
        if (mass != product) {
            report.independent = false;
            IndependenceWitness w;
            for (std::size_t j = 0; j < k; ++j) w.tuple.push_back(g.element_at(idx[j]));
            w.lhs = mass;
            w.rhs = product;
            report.witness = std::move(w);
            return report;
        }
    }
    return report;
}

IndependenceReport are_independent_charfn(const std::vector<Distribution>& dists,
                                          const FormSystem& fs, std::int64_t step_cap) {
    require_instance(dists, fs);
    const Group& g = fs.group;
    std::size_t n = static_cast<std::size_t>(fs.n);
    std::size_t k = static_cast<std::size_t>(fs.k);
    checked_pow(g.order(), fs.k, step_cap, "character scan");

    std::vector<CharFnTable> tables;
    tables.reserve(n);
    for (const Distribution& d : dists) tables.push_back(char_fn(d));

    std::vector<std::vector<Homomorphism>> adj;  // adj[i][j] = adjoint of coeff of xi_i in L_j
    adj.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Homomorphism> row;
        row.reserve(k);
        for (std::size_t j = 0; j < k; ++j) row.push_back(adjoint(fs.coeffs[j][i]));
        adj.push_back(std::move(row));
    }

    IndependenceReport report;
    report.method = IndepMethod::charfn;
    std::vector<std::int64_t> u(k, 0);
    std::vector<Element> uel(k, g.zero());
    for (;;) {
        Cyclo lhs(Rat(1)), rhs(Rat(1));
        for (std::size_t i = 0; i < n; ++i) {
            Element s = g.zero();
            for (std::size_t j = 0; j < k; ++j) {
                Element a = adj[i][j](uel[j]);
                s = g.add(s, a);
                rhs *= tables[i].value(a);
            }
            lhs *= tables[i].value(s);
        }
        if (lhs != rhs) {
            report.independent = false;
            report.witness = IndependenceWitness{uel, lhs, rhs};
            return report;
        }
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (++u[pos] < g.order()) {
                uel[pos] = g.element_at(u[pos]);
                break;
            }
            u[pos] = 0;
            uel[pos] = g.zero();
            if (pos == 0) return report;
        }
    }
}

}  // namespace finabel
