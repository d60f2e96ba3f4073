#include "einl/builtins.hpp"

#include "einl/errors.hpp"

namespace einl {

std::vector<std::string> builtin_names() {
    return {"free", "zero", "sum-zero", "atom", "diagonal"};
}

BuiltinModule make_builtin(const CategoryInstance& cat, const std::string& name, int source, int trunc) {
    BuiltinModule out;
    out.name = name;
    if (name == "free" || name == "zero") {
        out.parent = std::make_shared<const GradedModule>(GradedModule::free(cat, source, trunc));
        out.sub = std::make_shared<const GradedSubmodule>(name == "free" ? GradedSubmodule::full_of(*out.parent)
                                                                         : GradedSubmodule::zero_of(*out.parent));
        return out;
    }
    if (name == "sum-zero") {
        if (trunc < 2) throw UsageError("sum-zero needs truncation at least 2");
        out.parent = std::make_shared<const GradedModule>(GradedModule::free(cat, 1, trunc));
        if (out.parent->dim(2) < 2) throw UsageError("sum-zero needs at least two degree-2 basis morphisms");
        QVec gen(out.parent->dim(2), Rational(0));
        gen[0] = Rational(1);
        gen[1] = Rational(-1);
        out.sub = std::make_shared<const GradedSubmodule>(submodule_generated(*out.parent, {{2, gen}}));
        return out;
    }
    if (name == "atom") {
        out.parent = std::make_shared<const GradedModule>(GradedModule::atom(cat, trunc));
        out.sub = std::make_shared<const GradedSubmodule>(GradedSubmodule::full_of(*out.parent));
        return out;
    }
    if (name == "diagonal") {
        if (trunc < 1) throw UsageError("diagonal needs truncation at least 1");
        std::vector<GradedModule> parts;
        parts.push_back(GradedModule::free(cat, 1, trunc));
        parts.push_back(GradedModule::free(cat, 1, trunc));
        out.parent = std::make_shared<const GradedModule>(GradedModule::direct_sum(std::move(parts)));
        if (out.parent->summands().size() != 2 || out.parent->summands()[0].block_dim[1] == 0)
            throw UsageError("diagonal needs a degree-1 basis morphism");
        QVec gen(out.parent->dim(1), Rational(0));
        gen[0] = Rational(1);
        gen[out.parent->summands()[1].offset[1]] = Rational(1);
        out.sub = std::make_shared<const GradedSubmodule>(submodule_generated(*out.parent, {{1, gen}}));
        return out;
    }
    throw UsageError("unknown builtin module '" + name + "'; known: free, zero, sum-zero, atom, diagonal");
}

BuiltinModule make_from_generators(const CategoryInstance& cat, int source, int trunc,
                                   const std::vector<HomogeneousElement>& gens, const std::string& label) {
    BuiltinModule out;
    out.name = label;
    out.parent = std::make_shared<const GradedModule>(GradedModule::free(cat, source, trunc));
    out.sub = std::make_shared<const GradedSubmodule>(submodule_generated(*out.parent, gens));
    return out;
}

} // namespace einl
