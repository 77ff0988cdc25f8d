#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ccl/logic.hpp"
#include "ccl/rational.hpp"
#include "ccl/theory.hpp"

namespace ccl {

/// A validated theory lowered onto one interned Herbrand base
/// (program atoms plus every atomic choice).
struct CompiledTheory {
    GroundProgram program;
    /// space -> alternative -> atoms, in declaration order.
    std::vector<std::vector<std::vector<AtomId>>> spaces;
    std::vector<Rational> mu; // indexed by AtomId; zero for non-choices
    std::vector<bool> is_choice;

    /// Atomic choices of one space, in first-occurrence order.
    std::vector<AtomId> atomic_choices(std::size_t space) const;
};

/// Throws ValidationError if the theory is invalid.
CompiledTheory compile(const Theory& theory);

/// Coherent selection restricted to one choice space.
struct PartialChoice {
    std::size_t space_index = 0;
    std::vector<AtomId> selection; // one atom per alternative
    std::vector<AtomId> image;     // distinct selected atoms, sorted
};

/// Every coherent partial choice of a space, in canonical order
/// (alternative order, then atom declaration order).
std::vector<PartialChoice> coherent_partial_choices(const CompiledTheory& theory, std::size_t space);

struct TotalChoice {
    std::vector<PartialChoice> parts; // one per space

    /// Union of the parts' images, sorted.
    std::vector<AtomId> image() const;
};

inline constexpr std::size_t default_world_cap = std::size_t{1} << 20;

/// All coherent total choices, space 1 most significant. Throws
/// CapacityError above `cap`.
std::vector<TotalChoice> enumerate_total_choices(const CompiledTheory& theory, std::size_t cap = default_world_cap);
std::vector<TotalChoice> enumerate_total_choices(const Theory& theory, std::size_t cap = default_world_cap);

struct World {
    std::vector<std::size_t> classes; // per space: index into classes_by_space[space]
    std::vector<AtomId> image;
    Interpretation model;
};

struct WorldClass {
    PartialChoice partial;
    std::vector<std::size_t> worlds; // indices into WorldSpace::worlds()
};

/// A query with atoms resolved against the Herbrand base.
struct ResolvedQuery {
    std::vector<std::pair<AtomId, bool>> literals;
};

class UnknownAtomError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Omega together with the partitions Omega_i induced by each space.
class WorldSpace {
public:
    static WorldSpace build(const Theory& theory, std::size_t cap = default_world_cap);

    const CompiledTheory& theory() const { return theory_; }
    const std::vector<World>& worlds() const { return worlds_; }
    const std::vector<std::vector<WorldClass>>& classes_by_space() const { return classes_; }
    std::size_t num_spaces() const { return classes_.size(); }

    /// Throws UnknownAtomError if a positive literal is outside the Herbrand
    /// base. Negative literals on unknown atoms hold vacuously.
    ResolvedQuery resolve(const Query& query) const;

    bool satisfies(std::size_t world, const ResolvedQuery& query) const;
    bool satisfies(std::size_t world, const Query& query) const { return satisfies(world, resolve(query)); }
    std::vector<std::size_t> satisfying_worlds(const Query& query) const;

    std::string atom_name(AtomId id) const { return to_string(theory_.program.atom(id)); }

private:
    CompiledTheory theory_;
    std::vector<World> worlds_;
    std::vector<std::vector<WorldClass>> classes_;
};

} // namespace ccl
