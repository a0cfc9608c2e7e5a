#include "mpir/table_io.hpp"

#include <cctype>
#include <sstream>

#include "mpir/errors.hpp"

namespace mpir {

namespace {

char letter_of(int message) { return static_cast<char>('a' + message - 1); }

int message_of(char letter) { return letter - 'a' + 1; }

}  // namespace

std::string format_query(const Query& query) {
    std::ostringstream os;
    bool first = true;
    for (const auto& term : query.terms) {
        if (!first) os << '+';
        first = false;
        if (term.coeff != 1) os << term.coeff;
        os << letter_of(term.message) << '_' << term.index;
    }
    return os.str();
}

std::string emit_table_text(const QueryTable& table) {
    if (table.params.message_count > 26)
        throw Error("letter notation only covers up to 26 messages");
    std::ostringstream os;
    os << "table scheme=" << table.scheme << " M=" << table.params.message_count
       << " P=" << table.params.desired_count << " N=" << table.params.db_count
       << " q=" << table.params.q << " L=" << table.params.length << '\n';
    for (std::size_t db = 0; db < table.per_db.size(); ++db) {
        os << "db " << db + 1 << '\n';
        int round = -1, stage = -1;
        for (const Query& query : table.per_db[db]) {
            if (query.round != round || query.stage != stage) {
                round = query.round;
                stage = query.stage;
                os << "round " << round << " stage " << stage << '\n';
            }
            os << format_query(query) << '\n';
        }
    }
    return os.str();
}

namespace {

Query parse_equation(const std::string& line, int round, int stage, int seq) {
    Query q;
    q.round = round;
    q.stage = stage;
    q.seq = seq;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::uint64_t coeff = 0;
        bool saw_digit = false;
        while (pos < line.size() && isdigit(static_cast<unsigned char>(line[pos]))) {
            coeff = coeff * 10 + (line[pos] - '0');
            saw_digit = true;
            ++pos;
        }
        if (pos >= line.size() || !islower(static_cast<unsigned char>(line[pos])))
            throw Error("malformed term in '" + line + "'");
        const int message = message_of(line[pos++]);
        if (pos >= line.size() || line[pos] != '_')
            throw Error("missing symbol index in '" + line + "'");
        ++pos;
        long long index = 0;
        bool saw_index = false;
        while (pos < line.size() && isdigit(static_cast<unsigned char>(line[pos]))) {
            index = index * 10 + (line[pos] - '0');
            saw_index = true;
            ++pos;
        }
        if (!saw_index) throw Error("missing symbol index in '" + line + "'");
        q.terms.push_back({message, index,
                           saw_digit ? static_cast<std::uint32_t>(coeff) : 1u});
        if (pos < line.size()) {
            if (line[pos] != '+') throw Error("expected '+' in '" + line + "'");
            ++pos;
        }
    }
    if (q.terms.empty()) throw Error("empty equation line");
    return q;
}

}  // namespace

QueryTable parse_table_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw Error("empty table text");

    QueryTable table;
    {
        std::istringstream header(line);
        std::string word;
        header >> word;
        if (word != "table") throw Error("missing table header");
        while (header >> word) {
            const auto eq = word.find('=');
            if (eq == std::string::npos) throw Error("malformed header field " + word);
            const std::string key = word.substr(0, eq);
            const std::string value = word.substr(eq + 1);
            if (key == "scheme") table.scheme = value;
            else if (key == "M") table.params.message_count = std::stoi(value);
            else if (key == "P") table.params.desired_count = std::stoi(value);
            else if (key == "N") table.params.db_count = std::stoi(value);
            else if (key == "q") table.params.q = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "L") table.params.length = std::stoll(value);
            else throw Error("unknown header field " + key);
        }
    }
    table.params.validate();
    table.per_db.resize(table.params.db_count);

    int db = 0, round = 0, stage = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        if (line.rfind("db ", 0) == 0) {
            ls >> word >> db;
            if (db < 1 || db > table.params.db_count) throw Error("database id out of range");
            round = stage = 0;
        } else if (line.rfind("round ", 0) == 0) {
            std::string stage_word;
            ls >> word >> round >> stage_word >> stage;
            if (stage_word != "stage") throw Error("malformed block header: " + line);
        } else {
            if (db == 0 || round == 0) throw Error("equation before block headers");
            auto& queries = table.per_db[db - 1];
            queries.push_back(
                parse_equation(line, round, stage, static_cast<int>(queries.size())));
        }
    }
    table.protocol_order.resize(table.params.db_count);
    for (int n = 0; n < table.params.db_count; ++n) {
        table.protocol_order[n].resize(table.per_db[n].size());
        for (std::size_t i = 0; i < table.per_db[n].size(); ++i)
            table.protocol_order[n][i] = static_cast<int>(i);
    }
    return table;
}

std::string emit_table_csv(const QueryTable& table) {
    std::ostringstream os;
    os << "db,round,stage,category,terms\n";
    for (std::size_t db = 0; db < table.per_db.size(); ++db) {
        for (const Query& query : table.per_db[db]) {
            os << db + 1 << ',' << query.round << ',' << query.stage << ','
               << query.category << ',';
            bool first = true;
            for (const auto& term : query.terms) {
                if (!first) os << '|';
                first = false;
                os << term.message << ':' << term.index << ':' << term.coeff;
            }
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace mpir
