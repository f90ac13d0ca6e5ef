#pragma once

#include "voroshot/geometry.hpp"

namespace voroshot {

// Parameters of the compositional transform: L2-normalize, then scale/shift
// elementwise by (w, b), then apply the power-ladder step with exponent
// lambda. lambda = 0 means elementwise log.
struct TransformParams {
    double w = 1.0;
    double b = 0.0;
    double lambda = 1.0;
};

// z / ||z||_2. Throws DomainError on the zero vector.
Point l2_normalize(const Point& z);

// Elementwise w*z_i + b.
Point linear(const Point& z, double w, double b);

// Elementwise z_i^lambda (lambda != 0) or log(z_i) (lambda = 0).
// Entries must be strictly positive unless lambda is a nonzero integer.
Point tukey(const Point& z, double lambda);

// tukey(linear(l2_normalize(z), w, b), lambda). Errors carry the name of
// the failing stage.
Point apply_transform(const TransformParams& params, const Point& z);

} // namespace voroshot
