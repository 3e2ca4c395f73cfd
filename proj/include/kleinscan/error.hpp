#pragma once

#include <stdexcept>
#include <string>

namespace kleinscan {

enum class Errc {
    zero_divisor,
    not_in_sl2c,
    not_in_u11h,
    identity_element,
    degenerate,
    not_diagonalizable,
    invalid_test_map,
    point_at_infinity,
    outside_ball,
    depth_too_large,
    invalid_input,
};

inline const char* errc_name(Errc e) {
    switch (e) {
    case Errc::zero_divisor: return "zero_divisor";
    case Errc::not_in_sl2c: return "not_in_sl2c";
    case Errc::not_in_u11h: return "not_in_u11h";
    case Errc::identity_element: return "identity_element";
    case Errc::degenerate: return "degenerate";
    case Errc::not_diagonalizable: return "not_diagonalizable";
    case Errc::invalid_test_map: return "invalid_test_map";
    case Errc::point_at_infinity: return "point_at_infinity";
    case Errc::outside_ball: return "outside_ball";
    case Errc::depth_too_large: return "depth_too_large";
    case Errc::invalid_input: return "invalid_input";
    }
    return "unknown";
}

// Every precondition failure in the library surfaces as this type.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace kleinscan
