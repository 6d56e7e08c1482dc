#include "sepsys/io.hpp"

#include <json.hpp>

#include <sstream>

namespace sepsys::io {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::parse, what); }

Bits index_set(const nlohmann::json& arr, int ground_size, const std::string& field)
{
    if (!arr.is_array())
        parse_error(field + ": expected an array of element indices");
    Bits b = 0;
    for (std::size_t j = 0; j < arr.size(); ++j) {
        const auto& v = arr[j];
        const std::string where = field + "[" + std::to_string(j) + "]";
        if (!v.is_number_integer())
            parse_error(where + ": expected an integer index");
        const auto e = v.get<long long>();
        if (e < 0 || e >= ground_size)
            parse_error(where + ": index " + std::to_string(e) + " out of range for ground_size " +
                        std::to_string(ground_size));
        if (((b >> e) & 1) != 0)
            parse_error(where + ": index " + std::to_string(e) + " repeated");
        b |= Bits{1} << e;
    }
    return b;
}

ordered_json index_array(Bits b)
{
    ordered_json arr = ordered_json::array();
    for (int e : elements_of(b))
        arr.push_back(e);
    return arr;
}

} // namespace

FamilyDocument parse_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_error(std::string("syntax error: ") + e.what());
    }
    if (!j.is_object())
        parse_error("document must be a JSON object");
    if (!j.contains("ground_size") || !j["ground_size"].is_number_integer())
        parse_error("ground_size: missing or not an integer");
    const auto ground = j["ground_size"].get<long long>();
    if (ground < 0)
        parse_error("ground_size: must be non-negative");
    if (ground > kMaxGround)
        parse_error("ground_size: " + std::to_string(ground) + " exceeds the 64-element limit");
    const int m = static_cast<int>(ground);
    if (!j.contains("sets") || !j["sets"].is_array())
        parse_error("sets: missing or not an array");

    std::vector<Bits> members;
    for (std::size_t i = 0; i < j["sets"].size(); ++i)
        members.push_back(index_set(j["sets"][i], m, "sets[" + std::to_string(i) + "]"));

    FamilyDocument doc;
    doc.family = Family(m, std::move(members));
    if (j.contains("role")) {
        if (!j["role"].is_string() || (j["role"] != "primal" && j["role"] != "dual"))
            parse_error("role: expected \"primal\" or \"dual\"");
        doc.role = j["role"].get<std::string>();
    }
    if (j.contains("witnesses")) {
        const auto& ws = j["witnesses"];
        if (!ws.is_array())
            parse_error("witnesses: expected an array");
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const std::string where = "witnesses[" + std::to_string(i) + "]";
            const auto& w = ws[i];
            if (!w.is_object() || !w.contains("member_index") || !w["member_index"].is_number_integer())
                parse_error(where + ".member_index: missing or not an integer");
            const auto idx = w["member_index"].get<long long>();
            if (idx < 0 || static_cast<std::size_t>(idx) >= doc.family.size())
                parse_error(where + ".member_index: " + std::to_string(idx) + " out of range");
            if (!w.contains("separator") || !w.contains("key"))
                parse_error(where + ": needs separator and key");
            DocumentWitness dw;
            dw.member_index = static_cast<std::size_t>(idx);
            dw.witness.separator = index_set(w["separator"], m, where + ".separator");
            dw.witness.key = index_set(w["key"], m, where + ".key");
            if (!dw.witness.well_formed())
                parse_error(where + ".key: not a subset of the separator");
            doc.witnesses.push_back(dw);
        }
    }
    return doc;
}

FamilyDocument parse_text(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos)
                return true;
        }
        return false;
    };
    if (!next_line())
        parse_error("line 1: empty document");
    long long m = -1;
    long long n = -1;
    {
        std::istringstream header(line);
        std::string extra;
        if (!(header >> m >> n) || (header >> extra))
            parse_error("line " + std::to_string(line_no) + ": expected header \"m n\"");
    }
    if (m < 0 || n < 0)
        parse_error("line " + std::to_string(line_no) + ": m and n must be non-negative");
    if (m > kMaxGround)
        parse_error("line " + std::to_string(line_no) + ": ground size " + std::to_string(m) +
                    " exceeds the 64-element limit");
    std::vector<Bits> members;
    // rows over an empty ground are blank lines
    if (m == 0 && n > (1 << 20))
        parse_error("line " + std::to_string(line_no) + ": too many rows for an empty ground");
    if (m == 0)
        members.assign(static_cast<std::size_t>(n), 0);
    for (long long r = 0; m > 0 && r < n; ++r) {
        if (!next_line())
            parse_error("line " + std::to_string(line_no + 1) + ": expected " + std::to_string(n) +
                        " member rows, got " + std::to_string(r));
        const auto first = line.find_first_not_of(" \t");
        const auto last = line.find_last_not_of(" \t");
        const std::string row = line.substr(first, last - first + 1);
        if (static_cast<long long>(row.size()) != m)
            parse_error("line " + std::to_string(line_no) + ": expected " + std::to_string(m) +
                        " characters, got " + std::to_string(row.size()));
        Bits b = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c] == '1')
                b |= Bits{1} << c;
            else if (row[c] != '0')
                parse_error("line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                            ": expected '0' or '1'");
        }
        members.push_back(b);
    }
    if (next_line())
        parse_error("line " + std::to_string(line_no) + ": trailing content after " + std::to_string(n) + " rows");
    return {Family(static_cast<int>(m), std::move(members)), std::nullopt, {}};
}

FamilyDocument parse_document(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{')
        return parse_json(text);
    return parse_text(text);
}

std::string emit_json(const FamilyDocument& doc)
{
    ordered_json j;
    j["ground_size"] = doc.family.ground_size();
    if (doc.role)
        j["role"] = *doc.role;
    ordered_json sets = ordered_json::array();
    for (Bits b : doc.family.members())
        sets.push_back(index_array(b));
    j["sets"] = std::move(sets);
    if (!doc.witnesses.empty()) {
        ordered_json ws = ordered_json::array();
        for (const auto& w : doc.witnesses) {
            ordered_json o;
            o["member_index"] = w.member_index;
            o["separator"] = index_array(w.witness.separator);
            o["key"] = index_array(w.witness.key);
            ws.push_back(std::move(o));
        }
        j["witnesses"] = std::move(ws);
    }
    return j.dump() + "\n";
}

std::string emit_text(const Family& f)
{
    std::string out = std::to_string(f.ground_size()) + " " + std::to_string(f.size()) + "\n";
    for (Bits b : f.members()) {
        for (int c = 0; c < f.ground_size(); ++c)
            out.push_back(((b >> c) & 1) != 0 ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::string emit(const FamilyDocument& doc, Format format)
{
    return format == Format::json ? emit_json(doc) : emit_text(doc.family);
}

} // namespace sepsys::io
