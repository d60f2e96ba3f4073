#pragma once

#include "einl/modules.hpp"

#include <memory>
#include <string>
#include <vector>

namespace einl {

/// A named example module: an owned parent plus a distinguished graded
/// submodule of it. The registry backs the command-line surface, so
/// acceptance runs need no external files. The category instance is
/// borrowed and must outlive the returned module.
struct BuiltinModule {
    std::string name;
    std::shared_ptr<const GradedModule> parent;
    std::shared_ptr<const GradedSubmodule> sub;
};

/// Names: "free" (all of M(i)), "zero" (zero submodule of M(i)),
/// "sum-zero" (difference closure inside M(1)), "atom" (Q in degree 0),
/// "diagonal" (the diagonal inside M(1) + M(1)).
BuiltinModule make_builtin(const CategoryInstance& cat, const std::string& name, int source, int trunc);

/// The builtin module backed by a homogeneous-generator file over M(source).
BuiltinModule make_from_generators(const CategoryInstance& cat, int source, int trunc,
                                   const std::vector<HomogeneousElement>& gens, const std::string& label);

std::vector<std::string> builtin_names();

} // namespace einl
