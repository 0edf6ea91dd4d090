#include "vfield/csv.hpp"

#include <optional>
#include <unordered_set>

#include "vfield/errors.hpp"
#include "vfield/labels.hpp"

namespace vfield {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;  // current record has content

    std::size_t i = 0;
    const std::size_t n = text.size();
    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
        any = false;
    };

    while (i < n) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                field.push_back(c);
                ++i;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty()) {
                    throw ValueError("CSV: quote inside an unquoted field at byte " +
                                     std::to_string(i));
                }
                quoted = true;
                any = true;
                ++i;
                break;
            case ',':
                end_field();
                any = true;
                ++i;
                break;
            case '\r':
                if (i + 1 < n && text[i + 1] == '\n') {
                    end_record();
                    i += 2;
                } else {
                    field.push_back(c);
                    ++i;
                }
                break;
            case '\n':
                end_record();
                ++i;
                break;
            default:
                field.push_back(c);
                any = true;
                ++i;
                break;
        }
    }
    if (quoted) {
        throw ValueError("CSV: unterminated quoted field");
    }
    if (any || !field.empty() || !record.empty()) {
        end_record();
    }
    return records;
}

std::string csv_field(const std::string& value) {
    const bool needs_quotes = value.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) {
        return value;
    }
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::size_t import_section_csv(Section& section, std::string_view text) {
    const auto records = parse_csv(text);
    if (records.empty()) {
        throw ValueError("CSV: empty input, expected a header row");
    }
    const std::vector<std::string>& header = records.front();
    if (header.empty() || header[0] != "id") {
        throw ValueError("CSV: first header column must be \"id\"");
    }
    std::vector<std::string> attrs(header.begin() + 1, header.end());
    if (attrs.empty()) {
        throw ValueError("CSV: header names no attributes");
    }
    std::unordered_set<std::string> seen_attrs;
    for (const std::string& attr : attrs) {
        if (!section.has_attribute(attr)) {
            throw NotFoundError("CSV: attribute \"" + attr + "\" is not defined in section \"" +
                                section.name() + "\"");
        }
        if (!seen_attrs.insert(attr).second) {
            throw DuplicateError("CSV: attribute \"" + attr + "\" listed twice in the header");
        }
    }

    // Validate every record before touching the section.
    struct Update {
        FileId id;
        std::vector<std::optional<std::string>> values;
    };
    std::vector<Update> updates;
    std::unordered_set<FileId> seen_ids;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const std::vector<std::string>& record = records[r];
        if (record.size() != header.size()) {
            throw ValueError("CSV: record " + std::to_string(r) + " has " +
                             std::to_string(record.size()) + " fields, header has " +
                             std::to_string(header.size()));
        }
        FileId id = 0;
        const std::string& id_text = record[0];
        if (id_text.empty() || id_text.find_first_not_of("0123456789") != std::string::npos) {
            throw ValueError("CSV: record " + std::to_string(r) + " id \"" + id_text +
                             "\" is not a number");
        }
        id = std::stoull(id_text);
        if (!section.has_file(id)) {
            throw MembershipError("CSV: file " + std::to_string(id) +
                                  " is not a member of section \"" + section.name() + "\"");
        }
        if (!seen_ids.insert(id).second) {
            throw DuplicateError("CSV: file " + std::to_string(id) + " listed twice");
        }
        Update update{id, {}};
        for (std::size_t c = 1; c < record.size(); ++c) {
            if (record[c].empty()) {
                update.values.emplace_back();
            } else if (!valid_label(record[c])) {
                throw ValueError("CSV: invalid attribute value \"" + record[c] + "\" in record " +
                                 std::to_string(r));
            } else {
                update.values.emplace_back(record[c]);
            }
        }
        updates.push_back(std::move(update));
    }

    for (const Update& update : updates) {
        for (std::size_t c = 0; c < attrs.size(); ++c) {
            section.set_value(update.id, attrs[c], update.values[c]);
        }
    }
    return updates.size();
}

std::string export_section_csv(const Section& section) {
    std::string out = "id";
    for (const std::string& attr : section.schema()) {
        out.push_back(',');
        out += csv_field(attr);
    }
    out.push_back('\n');
    for (FileId id : section.file_ids()) {
        out += std::to_string(id);
        for (const auto& cell : section.rows().at(id).cells) {
            out.push_back(',');
            if (cell.has_value()) {
                out += csv_field(*cell);
            }
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace vfield
