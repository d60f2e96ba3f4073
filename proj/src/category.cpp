#include "einl/category.hpp"

#include "einl/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace einl {

namespace {

constexpr uint32_t kUnset = UINT32_MAX;

size_t saturating_mul(size_t a, size_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    const size_t cap = SIZE_MAX / 4;
    return p > cap ? cap : static_cast<size_t>(p);
}

size_t saturating_pow(size_t base, size_t exp) {
    size_t out = 1;
    for (size_t k = 0; k < exp; ++k) out = saturating_mul(out, base);
    return out;
}

struct VecHash {
    size_t operator()(const std::vector<uint32_t>& v) const {
        size_t h = 1469598103934665603ull;
        for (uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Write-once-per-key cache: compute outside the lock, first insert wins.
template <class Map, class Key, class Fn>
const typename Map::mapped_type::element_type& cache_get(Map& cache, std::mutex& mu, const Key& key, Fn&& compute) {
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto value = compute();
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(value));
    return *it->second;
}

} // namespace

std::string to_string(CategoryKind k) {
    switch (k) {
        case CategoryKind::FiGamma: return "fi_gamma";
        case CategoryKind::Vi: return "vi";
        case CategoryKind::Vic: return "vic";
    }
    return "?";
}

std::string Morphism::to_string() const {
    std::string s = "(" + std::to_string(src) + "->" + std::to_string(tgt) + ")[";
    for (size_t k = 0; k < enc.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(enc[k]);
    }
    return s + "]";
}

uint32_t HomSet::index_of(const Morphism& m) const {
    auto opt = find(m);
    if (!opt) throw InvariantViolation("morphism not found in its hom-set: " + m.to_string());
    return *opt;
}

std::optional<uint32_t> HomSet::find(const Morphism& m) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), m);
    if (it == elems.end() || !(*it == m)) return std::nullopt;
    return static_cast<uint32_t>(it - elems.begin());
}

bool Quiver::is_path() const {
    if (arrows.size() != static_cast<size_t>(max_object)) return false;
    for (int i = 0; i < max_object; ++i)
        if (arrows[static_cast<size_t>(i)] != std::make_pair(i, i + 1)) return false;
    return true;
}

CategoryInstance::CategoryInstance(CategoryKind kind, int max_object, Limits limits)
    : kind_(kind), max_object_(max_object), limits_(limits), mu_(std::make_unique<std::mutex>()) {
    if (max_object < 0) throw UsageError("max_object must be non-negative");
}

CategoryInstance CategoryInstance::fi_gamma(FiniteGroupTable gamma, int max_object, Limits limits) {
    CategoryInstance c(CategoryKind::FiGamma, max_object, limits);
    c.gamma_ = std::move(gamma);
    return c;
}

CategoryInstance CategoryInstance::vi(uint32_t q, int max_object, Limits limits) {
    CategoryInstance c(CategoryKind::Vi, max_object, limits);
    c.field_ = PrimeField(q);
    return c;
}

CategoryInstance CategoryInstance::vic(uint32_t q, int max_object, Limits limits) {
    CategoryInstance c(CategoryKind::Vic, max_object, limits);
    c.field_ = PrimeField(q);
    return c;
}

const FiniteGroupTable& CategoryInstance::gamma() const {
    if (!gamma_) throw UsageError("category has no coloring group");
    return *gamma_;
}

const PrimeField& CategoryInstance::field() const {
    if (!field_) throw UsageError("category has no base field");
    return *field_;
}

std::string CategoryInstance::descriptor() const {
    switch (kind_) {
        case CategoryKind::FiGamma:
            if (gamma_->order() == 1) return "fi";
            return "fi_gamma(" + gamma_->name() + ")";
        case CategoryKind::Vi:
            return "vi(q=" + std::to_string(field_->modulus()) + ")";
        case CategoryKind::Vic:
            return "vic(q=" + std::to_string(field_->modulus()) + ")";
    }
    return "?";
}

void CategoryInstance::require_object(int i) const {
    if (i < 0 || i > max_object_)
        throw UsageError("object " + std::to_string(i) + " outside truncation range [0," +
                         std::to_string(max_object_) + "]");
}

size_t CategoryInstance::hom_size_estimate(int i, int j) const {
    if (i > j) return 0;
    const size_t si = static_cast<size_t>(i);
    const size_t sj = static_cast<size_t>(j);
    if (kind_ == CategoryKind::FiGamma) {
        size_t out = 1;
        for (size_t k = 0; k < si; ++k) out = saturating_mul(out, sj - k);
        return saturating_mul(out, saturating_pow(gamma_->order(), si));
    }
    const size_t q = field_->modulus();
    size_t out = 1;
    const size_t qj = saturating_pow(q, sj);
    for (size_t r = 0; r < si; ++r) out = saturating_mul(out, qj - saturating_pow(q, r));
    if (kind_ == CategoryKind::Vic) out = saturating_mul(out, saturating_pow(q, si * (sj - si)));
    return out;
}

// ---------------------------------------------------------------------------
// Morphism factories
// ---------------------------------------------------------------------------

namespace {

std::vector<uint32_t> encode_fi(const std::vector<int>& images, const std::vector<uint32_t>& colors) {
    std::vector<uint32_t> enc;
    enc.reserve(images.size() * 2);
    for (int v : images) enc.push_back(static_cast<uint32_t>(v));
    for (uint32_t c : colors) enc.push_back(c);
    return enc;
}

std::vector<uint32_t> encode_mat_colmajor(const Matrix<PrimeField>& m) {
    std::vector<uint32_t> enc;
    enc.reserve(m.rows() * m.cols());
    for (size_t c = 0; c < m.cols(); ++c)
        for (size_t r = 0; r < m.rows(); ++r) enc.push_back(m.at(r, c));
    return enc;
}

} // namespace

Morphism CategoryInstance::make_fi(int i, int j, std::vector<int> images, std::vector<uint32_t> colors) const {
    if (kind_ != CategoryKind::FiGamma) throw UsageError("make_fi on a non-FI category");
    require_object(i);
    require_object(j);
    if (images.size() != static_cast<size_t>(i) || colors.size() != static_cast<size_t>(i))
        throw UsageError("injection/coloring length must equal the source object");
    std::vector<bool> used(static_cast<size_t>(j), false);
    for (int v : images) {
        if (v < 1 || v > j) throw UsageError("injection value out of range [1," + std::to_string(j) + "]");
        if (used[static_cast<size_t>(v - 1)]) throw UsageError("map is not injective");
        used[static_cast<size_t>(v - 1)] = true;
    }
    for (uint32_t c : colors)
        if (c >= gamma_->order()) throw UsageError("coloring index out of range");
    Morphism m;
    m.src = i;
    m.tgt = j;
    m.kind = kind_;
    m.enc = encode_fi(images, colors);
    m.images = std::move(images);
    m.colors = std::move(colors);
    return m;
}

Morphism CategoryInstance::make_vi(int i, int j, Matrix<PrimeField> matrix) const {
    if (kind_ != CategoryKind::Vi) throw UsageError("make_vi on a non-VI category");
    require_object(i);
    require_object(j);
    if (matrix.rows() != static_cast<size_t>(j) || matrix.cols() != static_cast<size_t>(i))
        throw UsageError("matrix shape must be target-by-source");
    if (!(matrix.field() == *field_)) throw UsageError("matrix field mismatch");
    if (matrix.rank() != static_cast<size_t>(i)) throw UsageError("matrix does not have full column rank");
    Morphism m;
    m.src = i;
    m.tgt = j;
    m.kind = kind_;
    m.enc = encode_mat_colmajor(matrix);
    m.mat = std::move(matrix);
    return m;
}

Morphism CategoryInstance::make_vic(int i, int j, Matrix<PrimeField> matrix,
                                    const Subspace<PrimeField>& complement) const {
    if (kind_ != CategoryKind::Vic) throw UsageError("make_vic on a non-VIC category");
    require_object(i);
    require_object(j);
    if (matrix.rows() != static_cast<size_t>(j) || matrix.cols() != static_cast<size_t>(i))
        throw UsageError("matrix shape must be target-by-source");
    if (!(matrix.field() == *field_)) throw UsageError("matrix field mismatch");
    if (matrix.rank() != static_cast<size_t>(i)) throw UsageError("matrix does not have full column rank");
    if (complement.ambient() != static_cast<size_t>(j)) throw UsageError("complement lives in the wrong space");
    const auto column_space = Subspace<PrimeField>::from_spanning_matrix(matrix.transpose());
    if (!is_complement(column_space, complement))
        throw UsageError("subspace is not a complement of the column space");
    Morphism m;
    m.src = i;
    m.tgt = j;
    m.kind = kind_;
    m.enc = encode_mat_colmajor(matrix);
    const auto& cb = complement.basis();
    for (size_t r = 0; r < cb.rows(); ++r)
        for (size_t c = 0; c < cb.cols(); ++c) m.enc.push_back(cb.at(r, c));
    m.mat = std::move(matrix);
    m.complement = cb;
    return m;
}

// ---------------------------------------------------------------------------
// Identity / alpha / composition / inversion
// ---------------------------------------------------------------------------

Morphism CategoryInstance::identity(int i) const {
    require_object(i);
    if (kind_ == CategoryKind::FiGamma) {
        std::vector<int> images(static_cast<size_t>(i));
        for (int r = 0; r < i; ++r) images[static_cast<size_t>(r)] = r + 1;
        return make_fi(i, i, std::move(images), std::vector<uint32_t>(static_cast<size_t>(i), 0));
    }
    auto id = Matrix<PrimeField>::identity(*field_, static_cast<size_t>(i));
    if (kind_ == CategoryKind::Vi) return make_vi(i, i, std::move(id));
    return make_vic(i, i, std::move(id), Subspace<PrimeField>::zero(*field_, static_cast<size_t>(i)));
}

Morphism CategoryInstance::alpha(int i) const {
    require_object(i);
    require_object(i + 1);
    if (kind_ == CategoryKind::FiGamma) {
        std::vector<int> images(static_cast<size_t>(i));
        for (int r = 0; r < i; ++r) images[static_cast<size_t>(r)] = r + 1;
        return make_fi(i, i + 1, std::move(images), std::vector<uint32_t>(static_cast<size_t>(i), 0));
    }
    Matrix<PrimeField> inc(*field_, static_cast<size_t>(i + 1), static_cast<size_t>(i));
    for (int r = 0; r < i; ++r) inc.at(static_cast<size_t>(r), static_cast<size_t>(r)) = field_->one();
    if (kind_ == CategoryKind::Vi) return make_vi(i, i + 1, std::move(inc));
    // Complement is the last-coordinate line.
    std::vector<std::vector<uint32_t>> row{std::vector<uint32_t>(static_cast<size_t>(i + 1), 0)};
    row[0][static_cast<size_t>(i)] = 1;
    return make_vic(i, i + 1, std::move(inc),
                    Subspace<PrimeField>::span(*field_, static_cast<size_t>(i + 1), row));
}

Morphism CategoryInstance::alpha_path(int i, int j) const {
    require_object(i);
    require_object(j);
    if (i > j) throw UsageError("alpha_path requires source <= target");
    Morphism m = identity(i);
    for (int k = i; k < j; ++k) m = compose(alpha(k), m);
    return m;
}

Morphism CategoryInstance::compose(const Morphism& after, const Morphism& before) const {
    if (after.kind != kind_ || before.kind != kind_) throw UsageError("compose: foreign morphism kind");
    if (before.tgt != after.src)
        throw UsageError("compose: object mismatch, " + std::to_string(before.tgt) + " vs " + std::to_string(after.src));
    if (kind_ == CategoryKind::FiGamma) {
        const size_t n = before.images.size();
        std::vector<int> images(n);
        std::vector<uint32_t> colors(n);
        for (size_t r = 0; r < n; ++r) {
            const size_t mid = static_cast<size_t>(before.images[r] - 1);
            images[r] = after.images[mid];
            colors[r] = gamma_->mult(after.colors[mid], before.colors[r]);
        }
        return make_fi(before.src, after.tgt, std::move(images), std::move(colors));
    }
    Matrix<PrimeField> prod = (*after.mat) * (*before.mat);
    if (kind_ == CategoryKind::Vi) return make_vi(before.src, after.tgt, std::move(prod));
    // Z'' = Z_after + after(Z_before)
    std::vector<std::vector<uint32_t>> rows;
    const auto& za = *after.complement;
    for (size_t r = 0; r < za.rows(); ++r) rows.push_back(za.row(r));
    const auto& zb = *before.complement;
    for (size_t r = 0; r < zb.rows(); ++r) rows.push_back(after.mat->apply(zb.row(r)));
    const auto z = Subspace<PrimeField>::span(*field_, static_cast<size_t>(after.tgt), rows);
    return make_vic(before.src, after.tgt, std::move(prod), z);
}

Morphism CategoryInstance::invert(const Morphism& m) const {
    if (m.kind != kind_) throw UsageError("invert: foreign morphism kind");
    if (m.src != m.tgt) throw UsageError("invert: only endomorphisms are invertible");
    if (kind_ == CategoryKind::FiGamma) {
        const size_t n = m.images.size();
        std::vector<int> inv_images(n);
        std::vector<uint32_t> inv_colors(n);
        for (size_t r = 0; r < n; ++r) inv_images[static_cast<size_t>(m.images[r] - 1)] = static_cast<int>(r) + 1;
        for (size_t r = 0; r < n; ++r) {
            const size_t pre = static_cast<size_t>(inv_images[r] - 1);
            inv_colors[r] = gamma_->inverse(m.colors[pre]);
        }
        return make_fi(m.src, m.src, std::move(inv_images), std::move(inv_colors));
    }
    auto inv = m.mat->inverse();
    if (kind_ == CategoryKind::Vi) return make_vi(m.src, m.src, std::move(inv));
    return make_vic(m.src, m.src, std::move(inv), Subspace<PrimeField>::zero(*field_, static_cast<size_t>(m.src)));
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

const HomSet& CategoryInstance::hom_set(int i, int j) const {
    require_object(i);
    require_object(j);
    return cache_get(hom_cache_, *mu_, std::make_pair(i, j), [&] { return enumerate(i, j); });
}

std::unique_ptr<HomSet> CategoryInstance::enumerate(int i, int j) const {
    auto out = std::make_unique<HomSet>();
    if (i > j) return out;
    const size_t bound = (i == j) ? limits_.max_aut : limits_.max_hom;
    const size_t est = hom_size_estimate(i, j);
    if (est > bound)
        throw GuardExceeded("hom-set C(" + std::to_string(i) + "," + std::to_string(j) + ") has " +
                                std::to_string(est) + " morphisms, over the guard of " + std::to_string(bound),
                            i, j);
    if (kind_ == CategoryKind::FiGamma) {
        out = enumerate_fi(i, j);
    } else {
        out = enumerate_vi_like(i, j);
    }
    for (size_t k = 1; k < out->elems.size(); ++k)
        if (!(out->elems[k - 1] < out->elems[k]))
            throw InvariantViolation("hom-set enumeration is not strictly ascending");
    return out;
}

std::unique_ptr<HomSet> CategoryInstance::enumerate_fi(int i, int j) const {
    auto out = std::make_unique<HomSet>();
    const uint32_t gamma_order = gamma_->order();
    std::vector<int> images(static_cast<size_t>(i));
    std::vector<bool> used(static_cast<size_t>(j) + 1, false);
    std::vector<uint32_t> colors(static_cast<size_t>(i), 0);

    auto emit_colorings = [&] {
        std::fill(colors.begin(), colors.end(), 0u);
        while (true) {
            out->elems.push_back(make_fi(i, j, images, colors));
            // Odometer: rightmost coordinate is least significant.
            size_t pos = colors.size();
            while (pos > 0) {
                --pos;
                if (++colors[pos] < gamma_order) break;
                colors[pos] = 0;
                if (pos == 0) return;
            }
            if (colors.empty()) return;
        }
    };

    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == i) {
            emit_colorings();
            return;
        }
        for (int v = 1; v <= j; ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            used[static_cast<size_t>(v)] = true;
            images[static_cast<size_t>(pos)] = v;
            self(self, pos + 1);
            used[static_cast<size_t>(v)] = false;
        }
    };
    rec(rec, 0);
    return out;
}

std::unique_ptr<HomSet> CategoryInstance::enumerate_vi_like(int i, int j) const {
    auto out = std::make_unique<HomSet>();
    const PrimeField& f = *field_;
    const uint32_t q = f.modulus();
    const size_t rows = static_cast<size_t>(j);
    const size_t cols = static_cast<size_t>(i);
    const size_t len = rows * cols;
    std::vector<uint32_t> digits(len, 0);
    bool done = false;
    while (!done) {
        Matrix<PrimeField> m(f, rows, cols);
        for (size_t c = 0; c < cols; ++c)
            for (size_t r = 0; r < rows; ++r) m.at(r, c) = digits[c * rows + r];
        if (m.rank() == cols) {
            if (kind_ == CategoryKind::Vi) {
                out->elems.push_back(make_vi(i, j, std::move(m)));
            } else {
                const auto column_space = Subspace<PrimeField>::from_spanning_matrix(m.transpose());
                for (const auto& z : subspaces(j, j - i))
                    if (is_complement(column_space, z)) out->elems.push_back(make_vic(i, j, m, z));
            }
        }
        // Odometer over the column-major encoding, last digit least significant.
        if (len == 0) break;
        size_t pos = len;
        done = true;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < q) {
                done = false;
                break;
            }
            digits[pos] = 0;
        }
    }
    return out;
}

const std::vector<Subspace<PrimeField>>& CategoryInstance::subspaces(int n, int d) const {
    if (n < 0 || d < 0) throw UsageError("subspaces: negative dimension");
    return cache_get(subspace_cache_, *mu_, std::make_pair(n, d), [&] {
        auto out = std::make_unique<std::vector<Subspace<PrimeField>>>();
        if (d > n) return out;
        const PrimeField& f = *field_;
        const size_t sn = static_cast<size_t>(n);
        const size_t sd = static_cast<size_t>(d);
        std::vector<size_t> pivots(sd);
        auto emit_for_pivots = [&] {
            // Free entries: (r, c) with c > pivots[r] and c not a pivot column.
            std::vector<bool> is_pivot(sn, false);
            for (size_t p : pivots) is_pivot[p] = true;
            std::vector<std::pair<size_t, size_t>> free_pos;
            for (size_t r = 0; r < sd; ++r)
                for (size_t c = pivots[r] + 1; c < sn; ++c)
                    if (!is_pivot[c]) free_pos.emplace_back(r, c);
            std::vector<uint32_t> fill(free_pos.size(), 0);
            while (true) {
                Matrix<PrimeField> basis(f, sd, sn);
                for (size_t r = 0; r < sd; ++r) basis.at(r, pivots[r]) = f.one();
                for (size_t k = 0; k < free_pos.size(); ++k)
                    basis.at(free_pos[k].first, free_pos[k].second) = fill[k];
                out->push_back(Subspace<PrimeField>::from_spanning_matrix(basis));
                size_t pos = fill.size();
                bool rolled_over = true;
                while (pos > 0) {
                    --pos;
                    if (++fill[pos] < f.modulus()) {
                        rolled_over = false;
                        break;
                    }
                    fill[pos] = 0;
                }
                if (rolled_over) break;
            }
        };
        auto rec = [&](auto&& self, size_t r, size_t from) -> void {
            if (r == sd) {
                emit_for_pivots();
                return;
            }
            for (size_t c = from; c + (sd - r) <= sn; ++c) {
                pivots[r] = c;
                self(self, r + 1, c + 1);
            }
        };
        rec(rec, 0, 0);
        std::sort(out->begin(), out->end(),
                  [](const Subspace<PrimeField>& a, const Subspace<PrimeField>& b) { return a.encode() < b.encode(); });
        return out;
    });
}

// ---------------------------------------------------------------------------
// Unfactorizability and the underlying quiver
// ---------------------------------------------------------------------------

bool CategoryInstance::is_unfactorizable(const Morphism& m) const {
    if (m.src == m.tgt) return false; // isomorphisms are excluded outright
    for (int l = m.src + 1; l < m.tgt; ++l) {
        const HomSet& first = hom_set(m.src, l);
        const HomSet& second = hom_set(l, m.tgt);
        for (const Morphism& a : first.elems)
            for (const Morphism& b : second.elems)
                if (compose(b, a) == m) return false;
    }
    return true;
}

Quiver CategoryInstance::underlying_quiver(int up_to) const {
    require_object(up_to);
    Quiver quiver;
    quiver.max_object = up_to;
    for (int i = 0; i <= up_to; ++i) {
        for (int j = i + 1; j <= up_to; ++j) {
            const HomSet& hom = hom_set(i, j);
            if (hom.size() == 0) continue;
            bool arrow = false;
            if (j == i + 1) {
                arrow = is_unfactorizable(hom[0]);
            } else {
                // Union of all two-step composites; anything missed by every
                // intermediate object is unfactorizable.
                std::unordered_set<std::vector<uint32_t>, VecHash> covered;
                for (int l = i + 1; l < j; ++l) {
                    const HomSet& first = hom_set(i, l);
                    const HomSet& second = hom_set(l, j);
                    for (const Morphism& a : first.elems)
                        for (const Morphism& b : second.elems) covered.insert(compose(b, a).enc);
                }
                for (const Morphism& m : hom.elems) {
                    if (!covered.count(m.enc) && is_unfactorizable(m)) {
                        arrow = true;
                        break;
                    }
                }
            }
            if (arrow) quiver.arrows.emplace_back(i, j);
        }
    }
    std::sort(quiver.arrows.begin(), quiver.arrows.end());
    return quiver;
}

// ---------------------------------------------------------------------------
// Automorphism groups: generators, words, transversals
// ---------------------------------------------------------------------------

uint32_t CategoryInstance::aut_identity_index(int j) const {
    return aut(j).index_of(identity(j));
}

const std::vector<Morphism>& CategoryInstance::aut_generators(int j) const {
    require_object(j);
    return cache_get(gen_cache_, *mu_, j, [&] {
        auto out = std::make_unique<std::vector<Morphism>>();
        if (kind_ == CategoryKind::FiGamma) {
            for (int r = 1; r < j; ++r) {
                std::vector<int> images(static_cast<size_t>(j));
                for (int k = 0; k < j; ++k) images[static_cast<size_t>(k)] = k + 1;
                std::swap(images[static_cast<size_t>(r - 1)], images[static_cast<size_t>(r)]);
                out->push_back(make_fi(j, j, std::move(images), std::vector<uint32_t>(static_cast<size_t>(j), 0)));
            }
            for (int r = 1; r <= j; ++r) {
                for (uint32_t g : gamma_->generating_set()) {
                    std::vector<int> images(static_cast<size_t>(j));
                    for (int k = 0; k < j; ++k) images[static_cast<size_t>(k)] = k + 1;
                    std::vector<uint32_t> colors(static_cast<size_t>(j), 0);
                    colors[static_cast<size_t>(r - 1)] = g;
                    out->push_back(make_fi(j, j, std::move(images), std::move(colors)));
                }
            }
            return out;
        }
        const PrimeField& f = *field_;
        const size_t n = static_cast<size_t>(j);
        auto push_matrix = [&](Matrix<PrimeField> m) {
            if (kind_ == CategoryKind::Vi) {
                out->push_back(make_vi(j, j, std::move(m)));
            } else {
                out->push_back(make_vic(j, j, std::move(m), Subspace<PrimeField>::zero(f, n)));
            }
        };
        for (size_t r = 0; r < n; ++r)
            for (size_t s = 0; s < n; ++s) {
                if (r == s) continue;
                auto m = Matrix<PrimeField>::identity(f, n);
                m.at(r, s) = f.one();
                push_matrix(std::move(m));
            }
        if (f.modulus() > 2 && j >= 1) {
            auto m = Matrix<PrimeField>::identity(f, n);
            m.at(0, 0) = f.primitive_root();
            push_matrix(std::move(m));
        }
        return out;
    });
}

std::vector<uint32_t> CategoryInstance::aut_word(int j, uint32_t element_index) const {
    const auto& parents = cache_get(word_cache_, *mu_, j, [&] {
        const HomSet& group = aut(j);
        const auto& gens = aut_generators(j);
        auto out = std::make_unique<std::vector<std::pair<uint32_t, uint32_t>>>(
            group.size(), std::make_pair(kUnset, kUnset));
        const uint32_t id = aut_identity_index(j);
        (*out)[id] = {id, kUnset};
        std::vector<uint32_t> frontier{id};
        size_t seen = 1;
        while (!frontier.empty()) {
            std::vector<uint32_t> next;
            for (uint32_t x : frontier) {
                for (uint32_t k = 0; k < gens.size(); ++k) {
                    const uint32_t y = group.index_of(compose(gens[k], group[x]));
                    if ((*out)[y].first != kUnset) continue;
                    (*out)[y] = {x, k};
                    next.push_back(y);
                    ++seen;
                }
            }
            frontier = std::move(next);
        }
        if (seen != group.size())
            throw InvariantViolation("generators do not generate all of C(" + std::to_string(j) + "," +
                                     std::to_string(j) + "): reached " + std::to_string(seen) + " of " +
                                     std::to_string(group.size()));
        return out;
    });
    std::vector<uint32_t> word;
    uint32_t cur = element_index;
    const uint32_t id = aut_identity_index(j);
    while (cur != id) {
        word.push_back(parents[cur].second);
        cur = parents[cur].first;
    }
    std::reverse(word.begin(), word.end());
    return word;
}

const std::vector<uint32_t>& CategoryInstance::transversal(int i, int j) const {
    require_object(i);
    require_object(j);
    if (i > j) throw UsageError("transversal requires source <= target");
    return cache_get(transversal_cache_, *mu_, std::make_pair(i, j), [&] {
        const HomSet& hom = hom_set(i, j);
        const HomSet& group = aut(j);
        const Morphism base = alpha_path(i, j);
        auto out = std::make_unique<std::vector<uint32_t>>(hom.size(), kUnset);
        size_t assigned = 0;
        for (uint32_t g = 0; g < group.size() && assigned < out->size(); ++g) {
            const uint32_t t = hom.index_of(compose(group[g], base));
            if ((*out)[t] == kUnset) {
                (*out)[t] = g;
                ++assigned;
            }
        }
        return out;
    });
}

} // namespace einl
