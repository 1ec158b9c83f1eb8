// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace covcat::oracle {

mpq_class Arith::reduce(const mpq_class& x) const {
    if (modulus == 0) {
        return x;
    }
    const mpz_class p(static_cast<unsigned long>(modulus));
    mpz_class num = x.get_num() % p;
    mpz_class den = x.get_den() % p;
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * den_inv) % p;
    if (r < 0) {
        r += p;
    }
    return mpq_class(r);
}

mpq_class Arith::inverse(const mpq_class& x) const {
    if (modulus == 0) {
        return 1 / x;
    }
    // Fermat: x^(p-2).
    const mpz_class p(static_cast<unsigned long>(modulus));
    mpz_class r;
    const mpz_class base = reduce(x).get_num();
    mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), modulus - 2, p.get_mpz_t());
    return mpq_class(r);
}

Arith Arith::of(const Field& field) {
    return Arith{field.kind() == Field::Kind::Rationals ? 0 : field.characteristic()};
}

namespace {

// Reduces m in place to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> gauss_jordan(Rows& m, std::size_t cols, const Arith& k) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t found = row;
        while (found < m.size() && k.reduce(m[found][col]) == 0) {
            ++found;
        }
        if (found == m.size()) {
            continue;
        }
        std::swap(m[row], m[found]);
        const mpq_class scale = k.inverse(k.reduce(m[row][col]));
        for (auto& x : m[row]) {
            x = k.reduce(x * scale);
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row) {
                continue;
            }
            const mpq_class factor = k.reduce(m[r][col]);
            if (factor == 0) {
                continue;
            }
            for (std::size_t c = 0; c < m[r].size(); ++c) {
                m[r][c] = k.reduce(m[r][c] - factor * m[row][c]);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t width(const Rows& m) {
    return m.empty() ? 0 : m.front().size();
}

Rows entries(const LinearFunctor& f, ObjectIndex x, ObjectIndex y) {
    const std::size_t rows = f.target().dim(f(x), f(y));
    const std::size_t cols = f.source().dim(x, y);
    Rows out(rows, Row(cols, 0));
    const Matrix& m = f.matrix(x, y);
    for (std::size_t r = 0; r < m.rows() && r < rows; ++r) {
        for (std::size_t c = 0; c < m.cols() && c < cols; ++c) {
            out[r][c] = m.at(r, c);
        }
    }
    return out;
}

Row column(const Rows& m, std::size_t c) {
    Row out;
    for (const auto& r : m) {
        out.push_back(r[c]);
    }
    return out;
}

// All solutions X (rows × cols) of A X = B; `infinite` is set when the
// set is not finite or too large to list.
std::vector<Rows> all_solutions(const Rows& a, std::size_t unknowns, const Rows& b, std::size_t cols,
                                const Arith& k, bool& infinite) {
    std::vector<Solution> per_column;
    for (std::size_t c = 0; c < cols; ++c) {
        auto s = solve(a, unknowns, column(b, c), k);
        if (!s) {
            return {};
        }
        per_column.push_back(std::move(*s));
    }
    std::vector<Rows> out;
    std::vector<std::vector<Row>> options(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        const auto& s = per_column[c];
        if (s.homogeneous.empty()) {
            options[c].push_back(s.particular);
            continue;
        }
        if (k.modulus == 0) {
            infinite = true;
            options[c].push_back(s.particular);
            continue;
        }
        const std::size_t dim = s.homogeneous.size();
        std::size_t count = 1;
        for (std::size_t i = 0; i < dim; ++i) {
            count *= k.modulus;
            if (count > 4096) {
                infinite = true;
                break;
            }
        }
        if (count > 4096) {
            options[c].push_back(s.particular);
            continue;
        }
        for (std::size_t code = 0; code < count; ++code) {
            Row v = s.particular;
            std::size_t rest = code;
            for (std::size_t i = 0; i < dim; ++i) {
                const mpq_class coeff(static_cast<unsigned long>(rest % k.modulus));
                rest /= k.modulus;
                for (std::size_t r = 0; r < v.size(); ++r) {
                    v[r] = k.reduce(v[r] + coeff * s.homogeneous[i][r]);
                }
            }
            options[c].push_back(std::move(v));
        }
    }
    std::vector<std::size_t> choice(cols, 0);
    while (true) {
        Rows x(unknowns, Row(cols, 0));
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < unknowns; ++r) {
                x[r][c] = options[c][choice[c]][r];
            }
        }
        out.push_back(std::move(x));
        std::size_t c = 0;
        while (c < cols && ++choice[c] == options[c].size()) {
            choice[c] = 0;
            ++c;
        }
        if (c == cols) {
            break;
        }
        if (out.size() > 4096) {
            infinite = true;
            break;
        }
    }
    return out;
}

Matrix to_matrix(const Field& field, const Rows& rows, std::size_t cols) {
    std::vector<Vector> v(rows.begin(), rows.end());
    return Matrix::from_rows(field, v, cols);
}

// Enumerates every combination of per-key candidate matrices.
template <typename Visit>
void for_each_assignment(const std::vector<std::pair<HomKey, std::vector<Rows>>>& options, Visit visit) {
    std::vector<std::size_t> choice(options.size(), 0);
    for (const auto& [key, list] : options) {
        if (list.empty()) {
            return;
        }
    }
    while (true) {
        std::vector<std::pair<HomKey, const Rows*>> pick;
        for (std::size_t i = 0; i < options.size(); ++i) {
            pick.emplace_back(options[i].first, &options[i].second[choice[i]]);
        }
        visit(pick);
        std::size_t i = 0;
        while (i < options.size() && ++choice[i] == options[i].second.size()) {
            choice[i] = 0;
            ++i;
        }
        if (i == options.size()) {
            return;
        }
    }
}

}  // namespace

std::size_t rank(Rows m, const Arith& k) {
    return gauss_jordan(m, width(m), k).size();
}

std::size_t nullity(const Rows& m, std::size_t cols, const Arith& k) {
    Rows copy = m;
    return cols - gauss_jordan(copy, cols, k).size();
}

std::optional<Solution> solve(const Rows& a, std::size_t cols, const Row& b, const Arith& k) {
    Rows aug;
    for (std::size_t r = 0; r < a.size(); ++r) {
        Row row = a[r];
        row.resize(cols, 0);
        row.push_back(b[r]);
        aug.push_back(std::move(row));
    }
    const auto pivots = gauss_jordan(aug, cols + 1, k);
    if (!pivots.empty() && pivots.back() == cols) {
        return std::nullopt;
    }
    Solution s;
    s.particular.assign(cols, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        s.particular[pivots[i]] = aug[i][cols];
    }
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) {
            continue;
        }
        Row v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = k.reduce(-aug[i][free]);
        }
        s.homogeneous.push_back(std::move(v));
    }
    return s;
}

Rows multiply(const Rows& a, const Rows& b, std::size_t inner, std::size_t cols, const Arith& k) {
    Rows out(a.size(), Row(cols, 0));
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            mpq_class sum = 0;
            for (std::size_t i = 0; i < inner; ++i) {
                sum += a[r][i] * b[i][c];
            }
            out[r][c] = k.reduce(sum);
        }
    }
    return out;
}

bool is_identity(const Rows& m, std::size_t n, const Arith& k) {
    if (m.size() != n) {
        return false;
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (k.reduce(m[r][c]) != (r == c ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

std::size_t count_paths(const Quiver& q, const std::string& from, const std::string& to) {
    std::function<std::size_t(const std::string&)> walk = [&](const std::string& v) -> std::size_t {
        std::size_t total = v == to ? 1 : 0;
        for (const auto& a : q.arrows) {
            if (a.source == v) {
                total += walk(a.target);
            }
        }
        return total;
    };
    return walk(from);
}

std::vector<std::vector<std::string>> bfs_components(const LinearCategory& c) {
    const std::size_t n = c.object_count();
    std::vector<int> label(n, -1);
    std::vector<std::vector<std::string>> parts;
    for (ObjectIndex start = 0; start < n; ++start) {
        if (label[start] >= 0) {
            continue;
        }
        const int id = static_cast<int>(parts.size());
        parts.emplace_back();
        std::deque<ObjectIndex> queue{start};
        label[start] = id;
        while (!queue.empty()) {
            const ObjectIndex x = queue.front();
            queue.pop_front();
            parts.back().push_back(c.object_name(x));
            for (ObjectIndex y = 0; y < n; ++y) {
                if (label[y] < 0 && (c.dim(x, y) > 0 || c.dim(y, x) > 0)) {
                    label[y] = id;
                    queue.push_back(y);
                }
            }
        }
        std::sort(parts.back().begin(), parts.back().end());
    }
    return parts;
}

bool is_functor(const LinearFunctor& h) {
    const LinearCategory& src = h.source();
    const LinearCategory& dst = h.target();
    const Arith k = Arith::of(src.field());
    const std::size_t n = src.object_count();
    for (ObjectIndex x = 0; x < n; ++x) {
        const Rows m = entries(h, x, x);
        const Vector& id = src.identity(x);
        const Vector& target_id = dst.identity(h(x));
        for (std::size_t r = 0; r < m.size(); ++r) {
            mpq_class sum = 0;
            for (std::size_t c = 0; c < id.size(); ++c) {
                sum += m[r][c] * id[c];
            }
            if (k.reduce(sum) != k.reduce(target_id[r])) {
                return false;
            }
        }
    }
    for (ObjectIndex x = 0; x < n; ++x) {
        for (ObjectIndex y = 0; y < n; ++y) {
            const std::size_t dxy = src.dim(x, y);
            if (dxy == 0) {
                continue;
            }
            const Rows hxy = entries(h, x, y);
            for (ObjectIndex z = 0; z < n; ++z) {
                const std::size_t dyz = src.dim(y, z);
                if (dyz == 0) {
                    continue;
                }
                const Rows hyz = entries(h, y, z);
                const Rows hxz = entries(h, x, z);
                const std::size_t dxz = src.dim(x, z);
                const std::size_t tz = dst.dim(h(x), h(z));
                for (std::size_t i = 0; i < dxy; ++i) {
                    for (std::size_t j = 0; j < dyz; ++j) {
                        // H(g∘f) from the source structure constants.
                        Row lhs(tz, 0);
                        if (const Vector* gf = src.structure_constant(x, y, z, i, j)) {
                            for (std::size_t r = 0; r < tz; ++r) {
                                for (std::size_t c = 0; c < dxz; ++c) {
                                    lhs[r] += hxz[r][c] * (*gf)[c];
                                }
                            }
                        }
                        // H(g)∘H(f) expanded bilinearly in the target.
                        Row rhs(tz, 0);
                        for (std::size_t a = 0; a < hxy.size(); ++a) {
                            for (std::size_t b = 0; b < hyz.size(); ++b) {
                                const mpq_class coeff = hxy[a][i] * hyz[b][j];
                                if (k.reduce(coeff) == 0) {
                                    continue;
                                }
                                if (const Vector* v = dst.structure_constant(h(x), h(y), h(z), a, b)) {
                                    for (std::size_t r = 0; r < tz; ++r) {
                                        rhs[r] += coeff * (*v)[r];
                                    }
                                }
                            }
                        }
                        for (std::size_t r = 0; r < tz; ++r) {
                            if (k.reduce(lhs[r]) != k.reduce(rhs[r])) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    return true;
}

SearchResult search_lifts(const LinearFunctor& f, ObjectIndex from, ObjectIndex to) {
    SearchResult result;
    const LinearCategory& c = f.source();
    const Field& field = c.field();
    const Arith k = Arith::of(field);
    const std::size_t n = c.object_count();
    if (f(from) != f(to)) {
        return result;
    }

    std::map<ObjectIndex, std::vector<ObjectIndex>> fibres;
    for (ObjectIndex x = 0; x < n; ++x) {
        fibres[f(x)].push_back(x);
    }
    std::vector<std::vector<ObjectIndex>> perms;  // per base object, current permutation
    std::vector<ObjectIndex> bases;
    for (auto& [b, fibre] : fibres) {
        bases.push_back(b);
        perms.push_back(fibre);
    }

    std::function<void(std::size_t)> recurse = [&](std::size_t level) {
        if (level < bases.size()) {
            std::vector<ObjectIndex> perm = fibres[bases[level]];
            std::sort(perm.begin(), perm.end());
            do {
                perms[level] = perm;
                recurse(level + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
            return;
        }
        std::vector<ObjectIndex> map(n);
        for (std::size_t l = 0; l < bases.size(); ++l) {
            const auto& fibre = fibres[bases[l]];
            for (std::size_t i = 0; i < fibre.size(); ++i) {
                map[fibre[i]] = perms[l][i];
            }
        }
        if (map[from] != to) {
            return;
        }
        ++result.object_maps;

        std::vector<std::pair<HomKey, std::vector<Rows>>> options;
        for (ObjectIndex x = 0; x < n; ++x) {
            for (ObjectIndex y = 0; y < n; ++y) {
                const std::size_t d = c.dim(x, y);
                if (d == 0) {
                    continue;
                }
                // F(Hx, Hy) · X = F(x, y)
                const Rows lhs = entries(f, map[x], map[y]);
                const Rows rhs = entries(f, x, y);
                const std::size_t unknowns = c.dim(map[x], map[y]);
                auto sols = all_solutions(lhs, unknowns, rhs, d, k, result.infinite);
                options.emplace_back(HomKey{x, y}, std::move(sols));
            }
        }
        bool any = true;
        for (const auto& [key, list] : options) {
            any = any && !list.empty();
        }
        if (!any) {
            return;
        }
        ++result.candidates;
        for_each_assignment(options, [&](const std::vector<std::pair<HomKey, const Rows*>>& pick) {
            std::map<HomKey, Matrix> matrices;
            for (const auto& [key, rows] : pick) {
                const std::size_t d = c.dim(key.src, key.dst);
                if (rows->size() != d || nullity(*rows, d, k) != 0) {
                    return;  // not invertible
                }
                matrices.emplace(key, to_matrix(field, *rows, d));
            }
            try {
                LinearFunctor h(f.source_ptr(), f.source_ptr(), map, std::move(matrices));
                if (is_functor(h)) {
                    result.endofunctors.push_back(std::move(h));
                }
            } catch (const std::exception&) {
            }
        });
    };
    recurse(0);
    return result;
}

MediatorSearch search_mediators(const LinearFunctor& p1, const LinearFunctor& p2, const LinearFunctor& p,
                                const LinearFunctor& q) {
    MediatorSearch result;
    const LinearCategory& t = p.source();
    const LinearCategory& prod = p1.source();
    const Field& field = t.field();
    const Arith k = Arith::of(field);
    const std::size_t n = t.object_count();

    std::vector<std::vector<ObjectIndex>> candidates(n);
    for (ObjectIndex x = 0; x < n; ++x) {
        for (ObjectIndex z = 0; z < prod.object_count(); ++z) {
            if (p1(z) == p(x) && p2(z) == q(x)) {
                candidates[x].push_back(z);
            }
        }
        if (candidates[x].empty()) {
            return result;
        }
    }
    std::vector<std::size_t> choice(n, 0);
    while (true) {
        std::vector<ObjectIndex> map(n);
        for (ObjectIndex x = 0; x < n; ++x) {
            map[x] = candidates[x][choice[x]];
        }
        ++result.object_candidates;
        std::vector<std::pair<HomKey, std::vector<Rows>>> options;
        for (ObjectIndex x = 0; x < n; ++x) {
            for (ObjectIndex y = 0; y < n; ++y) {
                const std::size_t d = t.dim(x, y);
                if (d == 0) {
                    continue;
                }
                Rows lhs = entries(p1, map[x], map[y]);
                const Rows lhs2 = entries(p2, map[x], map[y]);
                lhs.insert(lhs.end(), lhs2.begin(), lhs2.end());
                Rows rhs = entries(p, x, y);
                const Rows rhs2 = entries(q, x, y);
                rhs.insert(rhs.end(), rhs2.begin(), rhs2.end());
                const std::size_t unknowns = prod.dim(map[x], map[y]);
                options.emplace_back(HomKey{x, y}, all_solutions(lhs, unknowns, rhs, d, k, result.infinite));
            }
        }
        for_each_assignment(options, [&](const std::vector<std::pair<HomKey, const Rows*>>& pick) {
            std::map<HomKey, Matrix> matrices;
            for (const auto& [key, rows] : pick) {
                if (!rows->empty()) {
                    matrices.emplace(key, to_matrix(field, *rows, t.dim(key.src, key.dst)));
                }
            }
            try {
                LinearFunctor m(p.source_ptr(), p1.source_ptr(), map, std::move(matrices));
                if (is_functor(m)) {
                    result.mediators.push_back(std::move(m));
                }
            } catch (const std::exception&) {
            }
        });
        std::size_t x = 0;
        while (x < n && ++choice[x] == candidates[x].size()) {
            choice[x] = 0;
            ++x;
        }
        if (x == n) {
            break;
        }
    }
    return result;
}

}  // namespace covcat::oracle
