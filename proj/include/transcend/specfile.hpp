#pragma once

// JSON spec-file ingestion shared by the command-line driver and the test
// suites.  A spec file bundles a coefficient field, a list of functions that
// satisfy one common kind of functional equation, an evaluation point, and
// optional known value relations plus per-file defaults.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "transcend/monomial.hpp"
#include "transcend/numberfield.hpp"
#include "transcend/systems.hpp"

namespace transcend {

struct SpecFile {
    std::shared_ptr<const NumberField> field;  // null = plain rationals
    std::vector<FunctionSpec> functions;
    FieldElement alpha;
    int declared_t = 1;
    std::vector<MultiPoly<FieldElement>> value_relations;
    std::optional<MultiPoly<Integer>> probe;
    int embedding = 0;
    long precision = 256;
    Rational epsilon = Rational(1, 2);
    long margin = 4;
    std::string path;
};

// Parse a spec file from disk.  Throws usage-kind errors on malformed input.
SpecFile load_spec(const std::string& path);

} // namespace transcend
