#ifndef SYMPLAB_ERRORS_HPP
#define SYMPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace symplab {

/** Base class of every error thrown by the library. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** The 2-form is singular at an evaluation point. */
struct DegenerateFormError : Error {
    using Error::Error;
};

/** A map that must be an immersion has a rank-deficient differential. */
struct ImmersionError : Error {
    using Error::Error;
};

/** Total areas that must agree do not (cohomology obstruction). */
struct AreaMismatchError : Error {
    using Error::Error;
};

/** A grid diffeomorphism folded (non-positive Jacobian determinant). */
struct MeshFoldError : Error {
    using Error::Error;
};

/** A 1-form that must be closed has a nonzero exterior derivative. */
struct NonClosedFormError : Error {
    using Error::Error;
};

/** Input to the Poisson solver has a nonzero mean. */
struct NonZeroMeanError : Error {
    using Error::Error;
};

/** An affine torus map failed validation (non-unimodular or non-symplectic). */
struct InvalidMapError : Error {
    using Error::Error;
};

/** A scenario file is malformed or violates a scenario rule. */
struct ScenarioError : Error {
    using Error::Error;
};

/** File I/O failure or malformed on-disk data. */
struct IoError : Error {
    using Error::Error;
};

} // namespace symplab

#endif
