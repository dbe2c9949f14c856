#ifndef SPANFORGE_TESTS_FIXTURES_HPP
#define SPANFORGE_TESTS_FIXTURES_HPP

// Shared, lazily built fixture categories. Building FINSET04 validates a
// ~134k-entry composition table, so tests reuse one instance per binary.

#include "spanforge/catalog.hpp"
#include "spanforge/category.hpp"

namespace fixtures {

inline const spanforge::catalog::FinsetFixture& finset04() {
    static const auto fx = spanforge::catalog::finset_fixture(4);
    return fx;
}

inline const spanforge::catalog::FinsetFixture& finset02() {
    static const auto fx = spanforge::catalog::finset_fixture(2);
    return fx;
}

inline const spanforge::catalog::FintopFixture& fintop2() {
    static const auto fx = spanforge::catalog::fintop_fixture(2);
    return fx;
}

inline spanforge::CategoryHandle finsurj12() {
    static const auto cat = spanforge::catalog::build(spanforge::catalog::finsurj_spec({1, 2}));
    return cat;
}

inline spanforge::CategoryHandle b2() {
    static const auto cat = spanforge::catalog::b2_lattice();
    return cat;
}

inline spanforge::CategoryHandle z2() {
    static const auto cat = spanforge::catalog::z2_group();
    return cat;
}

inline spanforge::CategoryHandle terminal() {
    static const auto cat = spanforge::catalog::build(spanforge::catalog::terminal_spec());
    return cat;
}

inline const spanforge::Functor& incl() {
    static const spanforge::Functor fun =
        spanforge::catalog::inclusion(finsurj12(), finset04().cat);
    return fun;
}

inline const spanforge::catalog::NegativeTightnessFixture& negative() {
    static const auto fx = spanforge::catalog::negative_tightness_fixture();
    return fx;
}

} // namespace fixtures

#endif
