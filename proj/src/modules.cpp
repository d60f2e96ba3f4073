#include "einl/modules.hpp"

#include "einl/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace einl {

namespace {

constexpr uint32_t kUnset = UINT32_MAX;
// Above this group order the second rho route closes under generators instead
// of enumerating every translate.
constexpr size_t kFullTranslateBound = 1000;

const RationalField kQ{};

QSubspace close_under_group(const GradedModule& v, int j, QSubspace s) {
    const auto& cat = v.category();
    const size_t gen_count = cat.aut_generators(j).size();
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t k = 0; k < gen_count; ++k) {
            const QMat& act = v.generator_action(j, k);
            for (size_t r = 0; r < s.dim(); ++r) {
                const QVec image = act.apply(s.basis().row(r));
                if (!s.contains(image)) {
                    s = s.sum(QSubspace::span(kQ, s.ambient(), {image}));
                    grew = true;
                }
            }
        }
    }
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Generator file parsing
// ---------------------------------------------------------------------------

std::vector<HomogeneousElement> parse_generator_stream(std::istream& in, const std::string& source_name) {
    std::vector<HomogeneousElement> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": expected 'degree: coords...'", line_no);
        HomogeneousElement elem;
        try {
            elem.degree = std::stoi(line.substr(first, colon - first));
        } catch (const std::exception&) {
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": bad degree", line_no);
        }
        if (elem.degree < 0)
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": negative degree", line_no);
        std::istringstream rest(line.substr(colon + 1));
        std::string tok;
        while (rest >> tok) {
            try {
                elem.coords.push_back(Rational::from_string(tok));
            } catch (const Error&) {
                throw ParseError(source_name + ":" + std::to_string(line_no) + ": bad rational '" + tok + "'",
                                 line_no);
            }
        }
        if (elem.coords.empty())
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": no coordinates", line_no);
        out.push_back(std::move(elem));
    }
    return out;
}

std::vector<HomogeneousElement> parse_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open generator file: " + path);
    return parse_generator_stream(in, path);
}

// ---------------------------------------------------------------------------
// GradedModule
// ---------------------------------------------------------------------------

GradedModule::GradedModule(const CategoryInstance& cat, int trunc) : cat_(&cat), trunc_(trunc) {
    if (trunc < 0 || trunc > cat.max_object())
        throw UsageError("module truncation must lie within the category truncation");
}

size_t GradedModule::dim(int j) const {
    if (j < 0 || j > trunc_) throw UsageError("degree out of range");
    return dims_[static_cast<size_t>(j)];
}

const QMat& GradedModule::generator_action(int j, size_t gen_index) const {
    if (j < 0 || j > trunc_) throw UsageError("degree out of range");
    return gen_actions_[static_cast<size_t>(j)].at(gen_index);
}

const QMat& GradedModule::step_action(int j) const {
    if (j < 0 || j >= trunc_) throw UsageError("step action degree out of range");
    return step_actions_[static_cast<size_t>(j)];
}

GradedModule GradedModule::free(const CategoryInstance& cat, int source, int trunc) {
    GradedModule v(cat, trunc);
    v.free_source_ = source;
    Summand s;
    s.source = source;
    for (int j = 0; j <= trunc; ++j) {
        const HomSet& basis = cat.hom_set(source, j);
        v.dims_.push_back(basis.size());
        s.offset.push_back(0);
        s.block_dim.push_back(basis.size());
        const auto& gens = cat.aut_generators(j);
        std::vector<QMat> acts;
        for (const auto& g : gens) {
            QMat act(kQ, basis.size(), basis.size());
            for (uint32_t t = 0; t < basis.size(); ++t)
                act.at(basis.index_of(cat.compose(g, basis[t])), t) = Rational(1);
            acts.push_back(std::move(act));
        }
        v.gen_actions_.push_back(std::move(acts));
    }
    v.summands_.push_back(std::move(s));
    for (int j = 0; j < trunc; ++j) {
        const HomSet& basis = cat.hom_set(source, j);
        const HomSet& basis_up = cat.hom_set(source, j + 1);
        const Morphism a = cat.alpha(j);
        QMat step(kQ, basis_up.size(), basis.size());
        for (uint32_t t = 0; t < basis.size(); ++t)
            step.at(basis_up.index_of(cat.compose(a, basis[t])), t) = Rational(1);
        v.step_actions_.push_back(std::move(step));
    }
    v.verify();
    return v;
}

GradedModule GradedModule::direct_sum(std::vector<GradedModule> parts) {
    if (parts.empty()) throw UsageError("direct_sum needs at least one part");
    const CategoryInstance& cat = parts.front().category();
    const int trunc = parts.front().truncation();
    for (const auto& p : parts) {
        if (&p.category() != &cat || p.truncation() != trunc)
            throw UsageError("direct_sum parts must share category and truncation");
        if (p.summands().empty())
            throw UsageError("direct_sum parts must be free modules or sums of free modules");
    }
    GradedModule v(cat, trunc);
    for (int j = 0; j <= trunc; ++j) {
        size_t total = 0;
        for (const auto& p : parts) total += p.dim(j);
        v.dims_.push_back(total);
    }
    for (const auto& p : parts) {
        for (const auto& s : p.summands()) {
            Summand shifted = s;
            v.summands_.push_back(shifted);
        }
    }
    // Recompute offsets degree by degree across the flattened summands.
    for (int j = 0; j <= trunc; ++j) {
        size_t off = 0;
        for (auto& s : v.summands_) {
            s.offset[static_cast<size_t>(j)] = off;
            off += s.block_dim[static_cast<size_t>(j)];
        }
    }
    for (int j = 0; j <= trunc; ++j) {
        const size_t n = v.dims_[static_cast<size_t>(j)];
        const auto& gens = cat.aut_generators(j);
        std::vector<QMat> acts;
        for (size_t k = 0; k < gens.size(); ++k) {
            QMat act(kQ, n, n);
            size_t off = 0;
            for (const auto& p : parts) {
                const QMat& block = p.generator_action(j, k);
                for (size_t r = 0; r < block.rows(); ++r)
                    for (size_t c = 0; c < block.cols(); ++c) act.at(off + r, off + c) = block.at(r, c);
                off += p.dim(j);
            }
            acts.push_back(std::move(act));
        }
        v.gen_actions_.push_back(std::move(acts));
    }
    for (int j = 0; j < trunc; ++j) {
        QMat step(kQ, v.dims_[static_cast<size_t>(j) + 1], v.dims_[static_cast<size_t>(j)]);
        size_t row_off = 0, col_off = 0;
        for (const auto& p : parts) {
            const QMat& block = p.step_action(j);
            for (size_t r = 0; r < block.rows(); ++r)
                for (size_t c = 0; c < block.cols(); ++c) step.at(row_off + r, col_off + c) = block.at(r, c);
            row_off += p.dim(j + 1);
            col_off += p.dim(j);
        }
        v.step_actions_.push_back(std::move(step));
    }
    v.verify();
    return v;
}

GradedModule GradedModule::atom(const CategoryInstance& cat, int trunc) {
    GradedModule v(cat, trunc);
    for (int j = 0; j <= trunc; ++j) {
        v.dims_.push_back(j == 0 ? 1 : 0);
        const size_t n = v.dims_.back();
        std::vector<QMat> acts(cat.aut_generators(j).size(), QMat(kQ, n, n));
        for (auto& a : acts) a = QMat::identity(kQ, n);
        v.gen_actions_.push_back(std::move(acts));
    }
    for (int j = 0; j < trunc; ++j)
        v.step_actions_.emplace_back(kQ, v.dims_[static_cast<size_t>(j) + 1], v.dims_[static_cast<size_t>(j)]);
    v.verify();
    return v;
}

GradedModule GradedModule::zero(const CategoryInstance& cat, int trunc) {
    GradedModule v(cat, trunc);
    for (int j = 0; j <= trunc; ++j) {
        v.dims_.push_back(0);
        v.gen_actions_.emplace_back(cat.aut_generators(j).size(), QMat(kQ, 0, 0));
    }
    for (int j = 0; j < trunc; ++j) v.step_actions_.emplace_back(kQ, 0, 0);
    v.verify();
    return v;
}

GradedModule GradedModule::from_data(const CategoryInstance& cat, int trunc, std::vector<size_t> dims,
                                     std::vector<std::vector<QMat>> generator_actions,
                                     std::vector<QMat> step_actions) {
    GradedModule v(cat, trunc);
    v.dims_ = std::move(dims);
    v.gen_actions_ = std::move(generator_actions);
    v.step_actions_ = std::move(step_actions);
    v.verify();
    return v;
}

QMat GradedModule::aut_action(int j, uint32_t element_index) const {
    if (j < 0 || j > trunc_) throw UsageError("degree out of range");
    const size_t n = dims_[static_cast<size_t>(j)];
    if (!summands_.empty()) {
        // Free sums act by permuting canonical basis morphisms blockwise.
        const Morphism& g = cat_->aut(j)[element_index];
        QMat act(kQ, n, n);
        for (const auto& s : summands_) {
            const HomSet& basis = cat_->hom_set(s.source, j);
            const size_t off = s.offset[static_cast<size_t>(j)];
            for (uint32_t t = 0; t < basis.size(); ++t)
                act.at(off + basis.index_of(cat_->compose(g, basis[t])), off + t) = Rational(1);
        }
        return act;
    }
    QMat act = QMat::identity(kQ, n);
    for (uint32_t k : cat_->aut_word(j, element_index))
        act = gen_actions_[static_cast<size_t>(j)][k] * act;
    return act;
}

QMat GradedModule::morphism_action(const Morphism& gamma) const {
    const int j = gamma.src;
    const int l = gamma.tgt;
    if (j < 0 || l > trunc_) throw UsageError("morphism action outside the truncation");
    if (j == l) return aut_action(j, cat_->aut(j).index_of(gamma));
    const auto& tr = cat_->transversal(j, l);
    const uint32_t g = tr[cat_->hom_set(j, l).index_of(gamma)];
    if (g == kUnset)
        throw InvariantViolation("no factorization through the canonical path; transitivity fails at (" +
                                 std::to_string(j) + "," + std::to_string(l) + ")");
    QMat act = aut_action(l, g);
    for (int k = l - 1; k >= j; --k) act = act * step_actions_[static_cast<size_t>(k)];
    return act;
}

void GradedModule::verify() const {
    const CategoryInstance& cat = *cat_;
    if (dims_.size() != static_cast<size_t>(trunc_) + 1 || gen_actions_.size() != dims_.size() ||
        step_actions_.size() != static_cast<size_t>(trunc_))
        throw UsageError("module data has the wrong number of degrees");
    for (int j = 0; j <= trunc_; ++j) {
        const size_t n = dims_[static_cast<size_t>(j)];
        const auto& gens = cat.aut_generators(j);
        const auto& acts = gen_actions_[static_cast<size_t>(j)];
        if (acts.size() != gens.size())
            throw UsageError("one action matrix per group generator is required at degree " + std::to_string(j));
        for (const auto& a : acts)
            if (a.rows() != n || a.cols() != n) throw UsageError("generator action has the wrong shape");
        const HomSet& group = cat.aut(j);
        // Representation property over all generator pairs, plus identity.
        if (!(aut_action(j, cat.aut_identity_index(j)) == QMat::identity(kQ, n)))
            throw InvariantViolation("identity does not act as the identity at degree " + std::to_string(j));
        for (size_t a = 0; a < gens.size(); ++a)
            for (size_t b = 0; b < gens.size(); ++b) {
                const uint32_t prod = group.index_of(cat.compose(gens[a], gens[b]));
                if (!(acts[a] * acts[b] == aut_action(j, prod)))
                    throw InvariantViolation("generator actions violate the representation property at degree " +
                                             std::to_string(j));
            }
        if (j < trunc_) {
            const QMat& step = step_actions_[static_cast<size_t>(j)];
            if (step.rows() != dims_[static_cast<size_t>(j) + 1] || step.cols() != n)
                throw UsageError("step action has the wrong shape at degree " + std::to_string(j));
            // Intertwining: the canonical witness u with u.alpha = alpha.g
            // must satisfy act(u) step = step act(g), generator by generator.
            const HomSet& hom_step = cat.hom_set(j, j + 1);
            const auto& tr = cat.transversal(j, j + 1);
            const Morphism alpha = cat.alpha(j);
            for (size_t k = 0; k < gens.size(); ++k) {
                const uint32_t u = tr[hom_step.index_of(cat.compose(alpha, gens[k]))];
                if (u == kUnset)
                    throw InvariantViolation("no intertwining witness at degree " + std::to_string(j));
                if (!(aut_action(j + 1, u) * step == step * acts[k]))
                    throw InvariantViolation("step action does not intertwine the group actions at degree " +
                                             std::to_string(j));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// GradedSubmodule
// ---------------------------------------------------------------------------

GradedSubmodule::GradedSubmodule(const GradedModule& parent, std::vector<QSubspace> degrees)
    : parent_(&parent), degrees_(std::move(degrees)) {
    if (degrees_.size() != static_cast<size_t>(parent.truncation()) + 1)
        throw UsageError("submodule needs one subspace per degree");
    for (int j = 0; j <= parent.truncation(); ++j)
        if (degrees_[static_cast<size_t>(j)].ambient() != parent.dim(j))
            throw UsageError("submodule subspace has the wrong ambient dimension at degree " + std::to_string(j));
}

GradedSubmodule GradedSubmodule::full_of(const GradedModule& parent) {
    std::vector<QSubspace> spaces;
    for (int j = 0; j <= parent.truncation(); ++j) spaces.push_back(QSubspace::full(kQ, parent.dim(j)));
    return GradedSubmodule(parent, std::move(spaces));
}

GradedSubmodule GradedSubmodule::zero_of(const GradedModule& parent) {
    std::vector<QSubspace> spaces;
    for (int j = 0; j <= parent.truncation(); ++j) spaces.push_back(QSubspace::zero(kQ, parent.dim(j)));
    return GradedSubmodule(parent, std::move(spaces));
}

const QSubspace& GradedSubmodule::space(int j) const {
    if (j < 0 || j > parent_->truncation()) throw UsageError("degree out of range");
    return degrees_[static_cast<size_t>(j)];
}

bool GradedSubmodule::is_zero() const {
    for (const auto& s : degrees_)
        if (s.dim() != 0) return false;
    return true;
}

bool GradedSubmodule::is_closed() const {
    const GradedModule& v = *parent_;
    const CategoryInstance& cat = v.category();
    for (int j = 0; j <= v.truncation(); ++j) {
        const QSubspace& s = degrees_[static_cast<size_t>(j)];
        for (size_t k = 0; k < cat.aut_generators(j).size(); ++k) {
            const QMat& act = v.generator_action(j, k);
            for (size_t r = 0; r < s.dim(); ++r)
                if (!s.contains(act.apply(s.basis().row(r)))) return false;
        }
        if (j < v.truncation()) {
            const QMat& step = v.step_action(j);
            const QSubspace& up = degrees_[static_cast<size_t>(j) + 1];
            for (size_t r = 0; r < s.dim(); ++r)
                if (!up.contains(step.apply(s.basis().row(r)))) return false;
        }
    }
    return true;
}

void GradedSubmodule::require_closed(const std::string& what) const {
    if (!is_closed()) throw InvariantViolation(what + ": graded family is not closed under the module actions");
}

GradedSubmodule submodule_generated(const GradedModule& parent, const std::vector<HomogeneousElement>& gens) {
    std::vector<QSubspace> spans;
    for (int j = 0; j <= parent.truncation(); ++j) spans.push_back(QSubspace::zero(kQ, parent.dim(j)));
    for (const auto& g : gens) {
        if (g.degree > parent.truncation())
            throw UsageError("generator degree " + std::to_string(g.degree) + " beyond truncation");
        if (g.coords.size() != parent.dim(g.degree))
            throw UsageError("generator at degree " + std::to_string(g.degree) + " has " +
                             std::to_string(g.coords.size()) + " coordinates, expected " +
                             std::to_string(parent.dim(g.degree)));
        auto& s = spans[static_cast<size_t>(g.degree)];
        s = s.sum(QSubspace::span(kQ, s.ambient(), {g.coords}));
    }
    // One upward sweep: close each degree under its group, then push through
    // the step map. Nothing ever flows downward, so one sweep is complete.
    for (int j = 0; j <= parent.truncation(); ++j) {
        spans[static_cast<size_t>(j)] = close_under_group(parent, j, spans[static_cast<size_t>(j)]);
        if (j < parent.truncation()) {
            const QMat& step = parent.step_action(j);
            const QSubspace& s = spans[static_cast<size_t>(j)];
            std::vector<QVec> pushed;
            for (size_t r = 0; r < s.dim(); ++r) pushed.push_back(step.apply(s.basis().row(r)));
            auto& up = spans[static_cast<size_t>(j) + 1];
            up = up.sum(QSubspace::span(kQ, up.ambient(), pushed));
        }
    }
    GradedSubmodule out(parent, std::move(spans));
    out.require_closed("submodule_generated");
    return out;
}

QSubspace rho_image(const GradedSubmodule& x, int j) {
    const GradedModule& v = x.parent();
    const CategoryInstance& cat = v.category();
    if (j < 0 || j >= v.truncation()) throw UsageError("rho degree out of range");
    const QSubspace& s = x.space(j);
    const size_t up_dim = v.dim(j + 1);

    // Route 1: every one-step morphism applied to every basis vector.
    std::vector<QVec> vectors;
    for (const auto& beta : cat.hom_set(j, j + 1).elems) {
        const QMat act = v.morphism_action(beta);
        for (size_t r = 0; r < s.dim(); ++r) vectors.push_back(act.apply(s.basis().row(r)));
    }
    const QSubspace direct = QSubspace::span(kQ, up_dim, vectors);

    // Route 2: group translates (or group closure, for large groups) of the
    // step image.
    std::vector<QVec> stepped;
    for (size_t r = 0; r < s.dim(); ++r) stepped.push_back(v.step_action(j).apply(s.basis().row(r)));
    const QSubspace step_image = QSubspace::span(kQ, up_dim, stepped);
    QSubspace translated = step_image;
    const HomSet& group = cat.aut(j + 1);
    if (group.size() <= kFullTranslateBound) {
        std::vector<QVec> all;
        for (uint32_t g = 0; g < group.size(); ++g) {
            const QMat act = v.aut_action(j + 1, g);
            for (size_t r = 0; r < step_image.dim(); ++r) all.push_back(act.apply(step_image.basis().row(r)));
        }
        translated = QSubspace::span(kQ, up_dim, all);
    } else {
        translated = close_under_group(v, j + 1, step_image);
    }
    if (!(direct == translated))
        throw InvariantViolation("the two rho computations disagree at degree " + std::to_string(j) +
                                 "; this contradicts transitivity and signals a module bug");
    return direct;
}

FGReport fg_verdict(const GradedSubmodule& x) {
    const int trunc = x.truncation();
    FGReport rep;
    rep.truncation = trunc;
    for (int j = 0; j < trunc; ++j) {
        const QSubspace rho = rho_image(x, j);
        rep.rho_full.push_back(rho == x.space(j + 1));
    }
    if (x.dim(0) > 0) rep.generator_degrees.push_back(0);
    for (int j = 0; j < trunc; ++j)
        if (!rep.rho_full[static_cast<size_t>(j)]) rep.generator_degrees.push_back(j + 1);
    int last_failure = -1;
    for (int j = 0; j < trunc; ++j)
        if (!rep.rho_full[static_cast<size_t>(j)]) last_failure = j;
    if (last_failure + 1 < trunc || trunc == 0) {
        rep.window_start = last_failure + 1;
        rep.finitely_generated_up_to_truncation = true;
        rep.caveat = "rho is onto at every degree in [" + std::to_string(*rep.window_start) + "," +
                     std::to_string(trunc - 1) + "]; degrees beyond " + std::to_string(trunc) +
                     " are outside the truncation and are not claimed";
    } else {
        rep.finitely_generated_up_to_truncation = false;
        rep.caveat = "rho fails at the last checked degree " + std::to_string(last_failure) +
                     "; no surjectivity window inside the truncation";
    }
    return rep;
}

TorsionReport torsion(const GradedSubmodule& x) {
    const GradedModule& v = x.parent();
    const CategoryInstance& cat = v.category();
    const int trunc = v.truncation();
    TorsionReport rep;
    rep.degrees_computed = trunc;
    for (int j = 0; j < trunc; ++j) {
        const QSubspace& s = x.space(j);
        // Solve step(sum c_r b_r) = 0 in the coefficients c.
        QMat basis_cols(kQ, v.dim(j), s.dim());
        for (size_t r = 0; r < s.dim(); ++r) {
            const QVec row = s.basis().row(r);
            for (size_t c = 0; c < row.size(); ++c) basis_cols.at(c, r) = row[c];
        }
        const QMat restricted = v.step_action(j) * basis_cols;
        std::vector<QVec> kernel_vectors;
        for (const auto& coeff : restricted.kernel_basis()) kernel_vectors.push_back(basis_cols.apply(coeff));
        rep.kernels.push_back(QSubspace::span(kQ, v.dim(j), kernel_vectors));
    }
    // The kernels must form a graded submodule: stable under the group and
    // killed by every one-step morphism.
    for (int j = 0; j < trunc; ++j) {
        const QSubspace& k = rep.kernels[static_cast<size_t>(j)];
        for (size_t g = 0; g < cat.aut_generators(j).size(); ++g) {
            const QMat& act = v.generator_action(j, g);
            for (size_t r = 0; r < k.dim(); ++r)
                if (!k.contains(act.apply(k.basis().row(r))))
                    throw InvariantViolation("torsion is not group-stable at degree " + std::to_string(j) +
                                             "; this contradicts the intertwining relation");
        }
        for (const auto& beta : cat.hom_set(j, j + 1).elems) {
            const QMat act = v.morphism_action(beta);
            for (size_t r = 0; r < k.dim(); ++r) {
                for (const auto& entry : act.apply(k.basis().row(r)))
                    if (!entry.is_zero())
                        throw InvariantViolation("a one-step morphism fails to kill the torsion at degree " +
                                                 std::to_string(j));
            }
        }
    }
    return rep;
}

std::vector<size_t> TorsionReport::dims() const {
    std::vector<size_t> out;
    for (const auto& k : kernels) out.push_back(k.dim());
    return out;
}

bool TorsionReport::is_zero() const {
    for (const auto& k : kernels)
        if (k.dim() != 0) return false;
    return true;
}

SumDecomposition sum_and_project(const GradedSubmodule& x, size_t summand_index) {
    const GradedModule& v = x.parent();
    const CategoryInstance& cat = v.category();
    const int trunc = v.truncation();
    if (summand_index >= v.summands().size()) throw UsageError("summand index out of range");
    const auto& s = v.summands()[summand_index];

    std::vector<QSubspace> inter;
    std::vector<QSubspace> proj;
    for (int j = 0; j <= trunc; ++j) {
        const size_t n = v.dim(j);
        const size_t off = s.offset[static_cast<size_t>(j)];
        const size_t blk = s.block_dim[static_cast<size_t>(j)];
        // Coordinate subspace spanned by everything outside the chosen block.
        std::vector<QVec> unit_rows;
        for (size_t c = 0; c < n; ++c) {
            if (c >= off && c < off + blk) continue;
            QVec e(n, Rational(0));
            e[c] = Rational(1);
            unit_rows.push_back(std::move(e));
        }
        const QSubspace complement_block = QSubspace::span(kQ, n, unit_rows);
        inter.push_back(x.space(j).intersect(complement_block));
        std::vector<QVec> projected;
        for (size_t r = 0; r < x.space(j).dim(); ++r) {
            const QVec row = x.space(j).basis().row(r);
            projected.push_back(QVec(row.begin() + static_cast<long>(off),
                                     row.begin() + static_cast<long>(off + blk)));
        }
        proj.push_back(QSubspace::span(kQ, blk, projected));
    }

    auto target = std::make_shared<const GradedModule>(GradedModule::free(cat, s.source, trunc));
    GradedSubmodule intersection(v, std::move(inter));
    GradedSubmodule projection(*target, std::move(proj));
    intersection.require_closed("sum_and_project intersection");
    projection.require_closed("sum_and_project projection");
    bool dims_add = true;
    for (int j = 0; j <= trunc; ++j)
        if (x.space(j).dim() != intersection.space(j).dim() + projection.space(j).dim()) dims_add = false;
    return SumDecomposition{std::move(intersection), std::move(target), std::move(projection), dims_add};
}

} // namespace einl
