#pragma once

#include <stdexcept>

namespace presdist {

/// Merge-tree dp_cost was handed a sigma that does not restrict to
/// generator/relation bijections preserving relation endpoints.
struct IncompatiblePresentations : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Module dp_cost was handed a sigma that is not a compatibility isomorphism.
struct NotSigmaCompatible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A certificate constructor received a candidate solution that fails
/// verification.
struct SolutionInvalid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A solver or search was asked to explore a space beyond its configured
/// limit.
struct SizeLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace presdist
