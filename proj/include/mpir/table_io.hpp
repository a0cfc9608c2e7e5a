#pragma once

#include <string>

#include "mpir/store.hpp"

namespace mpir {

// Human-readable query table, one equation per line, grouped in round/stage
// blocks the way the worked examples print them: messages are letters
// (a, b, c, ...), symbols are 1-based subscripts, unit coefficients are
// omitted, e.g. "2a_3+b_3+3c_2". Emission is canonical (construction
// order) so emit(parse(emit(t))) == emit(t) byte for byte.
std::string emit_table_text(const QueryTable& table);
QueryTable parse_table_text(const std::string& text);

// Machine form: db,round,stage,category,terms with terms encoded
// "message:index:coeff" joined by '|'.
std::string emit_table_csv(const QueryTable& table);

// One query rendered like the printed tables ("a_1", "2a_3+b_3+3c_2").
std::string format_query(const Query& query);

}  // namespace mpir
