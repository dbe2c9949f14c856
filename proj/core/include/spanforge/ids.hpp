#ifndef SPANFORGE_IDS_HPP
#define SPANFORGE_IDS_HPP

#include <cstdint>
#include <functional>

namespace spanforge {

/// Dense object index, assigned by declaration order in the owning category.
struct ObjId {
    std::uint32_t index = 0;

    friend constexpr bool operator==(ObjId, ObjId) = default;
    friend constexpr auto operator<=>(ObjId, ObjId) = default;
};

/// Dense morphism index, assigned by declaration order in the owning category.
struct MorId {
    std::uint32_t index = 0;

    friend constexpr bool operator==(MorId, MorId) = default;
    friend constexpr auto operator<=>(MorId, MorId) = default;
};

} // namespace spanforge

template <> struct std::hash<spanforge::ObjId> {
    std::size_t operator()(spanforge::ObjId x) const noexcept { return x.index; }
};
template <> struct std::hash<spanforge::MorId> {
    std::size_t operator()(spanforge::MorId m) const noexcept { return m.index; }
};

#endif
