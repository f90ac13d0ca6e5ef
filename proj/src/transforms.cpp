#include "voroshot/transforms.hpp"

#include <cmath>
#include <string>

#include "voroshot/error.hpp"

namespace voroshot {

Point l2_normalize(const Point& z) {
    double norm_sq = 0.0;
    for (double v : z) norm_sq += v * v;
    if (norm_sq == 0.0) {
        throw DomainError("l2_normalize: zero vector has no direction");
    }
    double inv = 1.0 / std::sqrt(norm_sq);
    Point out(z.size());
    for (size_t i = 0; i < z.size(); ++i) out[i] = z[i] * inv;
    return out;
}

Point linear(const Point& z, double w, double b) {
    Point out(z.size());
    for (size_t i = 0; i < z.size(); ++i) out[i] = w * z[i] + b;
    return out;
}

Point tukey(const Point& z, double lambda) {
    if (lambda == 1.0) return z;
    bool integer_lambda = std::floor(lambda) == lambda;
    Point out(z.size());
    if (lambda == 0.0) {
        for (size_t i = 0; i < z.size(); ++i) {
            if (z[i] <= 0.0) {
                throw DomainError("tukey: log of nonpositive entry at index " +
                                  std::to_string(i));
            }
            out[i] = std::log(z[i]);
        }
        return out;
    }
    for (size_t i = 0; i < z.size(); ++i) {
        if (!integer_lambda && z[i] <= 0.0) {
            throw DomainError("tukey: fractional power of nonpositive entry at index " +
                              std::to_string(i));
        }
        out[i] = std::pow(z[i], lambda);
        if (!std::isfinite(out[i])) {
            throw DomainError("tukey: nonfinite result at index " + std::to_string(i));
        }
    }
    return out;
}

Point apply_transform(const TransformParams& params, const Point& z) {
    return tukey(linear(l2_normalize(z), params.w, params.b), params.lambda);
}

} // namespace voroshot
