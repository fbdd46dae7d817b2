#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgg/game.hpp"

namespace pgg {

enum class GadgetKind { NearOr, True, False, Equiv, Clause };

const char* gadget_kind_name(GadgetKind k);
std::optional<GadgetKind> gadget_kind_from_name(std::string_view name);

// Operand vertices are shared with the outside; membrane vertices are the
// gadget-side neighbors of the operand set; internal vertices are the rest.
// No membrane or internal vertex ever gets an edge leaving the gadget.
enum class Role : std::uint8_t { Operand, Membrane, Internal };

// An abstractable child (a single-operand NearOr forcing its operand to 1,
// or a False forcing it to 0). `covered` lists every non-operand vertex of
// the child, so compositional verification can drop them wholesale.
struct SubGadget {
    GadgetKind kind = GadgetKind::True;
    int operand = 0;
    std::vector<int> covered;
};

// A graph fragment over local ids [0, num_vertices) with operands first.
// All vertices carry the picky pattern 1 0^k 1 0...
struct Gadget {
    GadgetKind kind = GadgetKind::NearOr;
    int k = 1;
    int arity = 1;
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<Role> roles;
    // Proof-derived completion values for non-operand vertices; entries left
    // empty are filled per operand vector (the Clause path groups).
    std::vector<std::optional<std::uint8_t>> witness_base;
    std::vector<SubGadget> subs;
    // Clause with k == 1 only: path_group[j] = inner path vertices between
    // the two operands other than j.
    std::array<std::vector<int>, 3> path_group{};

    Pattern pattern() const;
    std::vector<int> operands() const;
    std::vector<int> membrane() const;
};

// arity applies to NearOr only (True is NearOr with one operand; False,
// Equiv, and Clause have fixed arities 1, 2, and 3).
Gadget build_gadget(GadgetKind kind, int k, int arity = 0);

// Proof completion for an admissible operand assignment; index [0, nv).
std::vector<std::uint8_t> witness_completion(const Gadget& g,
                                             const std::vector<std::uint8_t>& operand_bits);

// What the gadget promises about any equilibrium of any graph it is glued
// into.
struct GadgetContract {
    // Admissible operand states, as a sum set or an explicit vector set.
    std::optional<std::set<int>> allowed_sums;
    std::optional<std::set<std::vector<std::uint8_t>>> allowed_vectors;
    bool safe = false;        // membrane inactive in every completion
    bool standalone = false;  // operands must best-respond too (Clause)

    bool allows(const std::vector<std::uint8_t>& operand_bits) const;
};

// The published contract of each gadget: NearOr admits exactly the operand
// sums outside {0, k+1}; True forces its operand active; False forces it
// inactive; Equiv forces equal operands; Clause realizes exactly the three
// one-hot operand vectors. All but Clause are safe.
GadgetContract default_contract(const Gadget& g);

enum class VerifyMode { Exact, Compositional };

struct OperandVectorStat {
    std::vector<std::uint8_t> bits;
    bool allowed = false;
    std::uint64_t completions = 0;        // internal assignments where every
                                          // required vertex best-responds
    std::uint64_t clean_completions = 0;  // ... with all membrane vertices inactive
    bool witness_checked = false;
    bool witness_ok = false;
};

struct ContractReport {
    bool pass = false;
    bool restrictive_ok = false;  // disallowed operand vectors admit no completion
    bool permissive_ok = false;   // allowed vectors admit a membrane-quiet completion
    bool safe_ok = true;          // only meaningful when the contract is safe
    bool realized_ok = true;      // standalone: realized vectors == allowed set
    VerifyMode mode = VerifyMode::Exact;
    std::uint64_t states_visited = 0;
    std::vector<OperandVectorStat> vectors;
    std::string failure;
};

// Exhaustively enumerates operand vectors and internal completions,
// requiring best responses of non-operand vertices only (operand
// environments are arbitrary; the standalone flag adds them back, which is
// sound there because safety of the surrounding gadgets silences the
// operands' outside neighborhoods). Compositional mode first replaces every
// recorded True/False child by its forced operand value, mirroring how the
// contracts of composed gadgets follow from their parts. Exact mode caps at
// 30 vertices. Operand vectors may be spread across `threads` workers; the
// report is merged in vector order either way.
ContractReport verify_contract(const Gadget& g, const GadgetContract& contract, VerifyMode mode,
                               int threads = 1);

// Where a gadget landed inside a host game.
struct Attachment {
    GadgetKind kind = GadgetKind::NearOr;
    int k = 1;
    int arity = 1;
    std::vector<int> operand_hosts;  // host vertex per operand slot
    int fresh_base = 0;              // first id of the appended block
    int fresh_count = 0;
};

// Returns the host with the gadget's non-operand vertices appended as fresh
// ids and all gadget edges added. Host patterns must equal the gadget's
// picky pattern.
GameInstance attach_gadget(const GameInstance& host, const Gadget& gadget,
                           const std::vector<int>& operand_hosts,
                           Attachment* record = nullptr);

// Maps a gadget-local vertex to its host id under an attachment.
int attached_vertex(const Attachment& a, int local);

}  // namespace pgg
