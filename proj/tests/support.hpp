#pragma once

#include <catch_amalgamated.hpp>

#include "spanlab/error.hpp"

/// Runs f and returns the ErrorCode it threw; fails the test if nothing was thrown.
template <class F>
spanlab::ErrorCode thrown_code(F&& f) {
    try {
        f();
    } catch (const spanlab::Error& e) {
        return e.code();
    }
    FAIL("expected a spanlab::Error");
    return spanlab::ErrorCode::InvalidParams;
}
