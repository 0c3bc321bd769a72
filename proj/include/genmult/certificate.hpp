#ifndef GENMULT_CERTIFICATE_HPP
#define GENMULT_CERTIFICATE_HPP

#include <map>
#include <string>

namespace genmult {

///
/// Outcome of one numerical check. For inequality claims the verdict is
/// lhs <= rhs * (1 + slack) + slack * scale; for identity claims lhs is a
/// residual and rhs the tolerance it must not exceed.
///
struct Certificate {
    std::string claim;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double threshold = 0.0;  // effective bound lhs is compared against
    bool pass = false;
    std::map<std::string, double> context;

    /// threshold - lhs; negative on failure
    [[nodiscard]] double margin() const { return threshold - lhs; }
};

inline Certificate inequality_certificate(std::string claim, double lhs, double rhs, double slack, double scale = 1.0) {
    Certificate c;
    c.claim = std::move(claim);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = slack;
    c.threshold = rhs * (1.0 + slack) + slack * scale;
    c.pass = lhs <= c.threshold;
    c.context["scale"] = scale;
    return c;
}

inline Certificate identity_certificate(std::string claim, double residual, double tolerance) {
    Certificate c;
    c.claim = std::move(claim);
    c.lhs = residual;
    c.rhs = tolerance;
    c.slack = tolerance;
    c.threshold = tolerance;
    c.pass = residual <= tolerance;
    return c;
}

}  // namespace genmult

#endif  // GENMULT_CERTIFICATE_HPP
