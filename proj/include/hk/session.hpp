#pragma once

#include "hk/dsl.hpp"
#include "hk/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hk {

// Builds the chart declared by a parsed chart statement; family members and
// family pairs are expanded. Throws ElabError with the statement position.
ChartPtr elaborate_chart(const ChartStmt& st);

// Turns an expression into an exact polynomial. A bare name matching a
// binding resolves to the bound polynomial on its own chart; inside a
// compound expression every part must live on `active`. Negative powers
// require a single-term base with invertible variables only; exponent
// magnitudes are capped at 64.
Poly elaborate_expr(const Expr& e, const ChartPtr& active,
                    const std::map<std::string, Poly>& bindings);

struct SessionConfig {
    int arity = 4;    // closure sweep cap when the command gives no cap
    int degree = 3;   // spanning-monomial degree for the bv vanishing probe
    int jobs = 0;     // OpenMP worker override; 0 keeps the runtime default
    std::string only; // when nonempty, run only commands with this head
    std::string structure_constants; // JSON path for `lie`; empty = built-in so(3)
};

struct CommandRecord {
    std::string command; // canonical echo of the statement
    std::string status;  // "ok" | "fail" | "error"
    std::string detail;  // witness term or error message
    std::vector<std::pair<std::string, std::string>> values;
};

struct SessionResult {
    std::vector<CommandRecord> records;
    int exit_code = 0; // 0 all ok; 1 some check failed; 2 error
};

// Executes the statements in order. Check failures are recorded and
// execution continues; the first hard error stops the run.
SessionResult run_session(const SessionAst& ast, const SessionConfig& cfg = {});

// Deterministic reports: one line per record, or a versioned JSON document
// ({"schema": 1, ...}); neither embeds timings.
std::string render_text(const SessionResult& r);
std::string render_json(const SessionResult& r);

inline std::string print_canonical(const Poly& p) { return p.str(); }

} // namespace hk
