#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "reflectode/errors.hpp"
#include "reflectode/quadrature.hpp"

namespace reflectode {

// Syntax or semantic error in a forcing expression; offset is the byte
// position in the source text.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// A parsed forcing expression over the grammar
//   expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
//   factor := '-' factor | power   ; power := atom ('^' factor)?
//   atom := number | 't' | fn '(' args ')' | '(' expr ')'
// with fn in {cos, sin, cosh, sinh, exp, ln, abs, arctan, bump, step}.
// bump(eps) = 12 t (eps - t) on [0, eps], 0 elsewhere (eps > 0 constant);
// step(t1, t2) = indicator of [min(t1,t2), max(t1,t2)] (constant edges).
// Breakpoints (bump/step edges, |affine| kinks) and integrable singular
// points (abs(affine)^p with p in (-1,0)) are extracted automatically;
// abs(...)^p with constant p <= -1 is rejected as non-integrable.
class ForcingExpr {
public:
    struct Impl; // opaque parsed tree

    double operator()(double t) const;
    const std::string& source() const;
    const std::vector<double>& breakpoints() const;
    const std::vector<double>& singular_points() const;

    // Package as a quadrature Forcing (shares the parsed tree).
    Forcing forcing() const;

private:
    friend ForcingExpr parse_forcing(std::string_view text);
    std::shared_ptr<const Impl> impl_;
};

ForcingExpr parse_forcing(std::string_view text);

} // namespace reflectode
