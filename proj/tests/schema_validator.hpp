#pragma once

// Minimal JSON Schema (draft-07 subset) validator for the shipped schemas.
// Supports: type, required, properties, additionalProperties:false, items,
// minItems, maxItems, minimum, oneOf.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace schemacheck {

using nlohmann::json;

inline void validate_node(const json& schema, const json& doc, const std::string& path,
                          std::vector<std::string>& errors);

inline bool type_matches(const std::string& type, const json& doc) {
    if (type == "object") return doc.is_object();
    if (type == "array") return doc.is_array();
    if (type == "string") return doc.is_string();
    if (type == "boolean") return doc.is_boolean();
    if (type == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    if (type == "number") return doc.is_number();
    return false;
}

inline void validate_node(const json& schema, const json& doc, const std::string& path,
                          std::vector<std::string>& errors) {
    if (schema.contains("oneOf")) {
        int matches = 0;
        for (const auto& option : schema["oneOf"]) {
            std::vector<std::string> sub;
            validate_node(option, doc, path, sub);
            if (sub.empty()) ++matches;
        }
        if (matches != 1)
            errors.push_back(path + ": oneOf matched " + std::to_string(matches) +
                             " alternatives");
        return;
    }

    if (schema.contains("type") && !type_matches(schema["type"], doc)) {
        errors.push_back(path + ": expected type " + schema["type"].get<std::string>());
        return;
    }

    if (doc.is_number() && schema.contains("minimum") &&
        doc.get<double>() < schema["minimum"].get<double>())
        errors.push_back(path + ": below minimum");

    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required key '" +
                                     key.get<std::string>() + "'");
        const json props =
            schema.contains("properties") ? schema["properties"] : json::object();
        for (const auto& [key, value] : doc.items()) {
            if (props.contains(key)) {
                validate_node(props[key], value, path + "/" + key, errors);
            } else if (schema.contains("additionalProperties") &&
                       schema["additionalProperties"].is_boolean() &&
                       !schema["additionalProperties"].get<bool>()) {
                errors.push_back(path + ": unexpected key '" + key + "'");
            }
        }
    }

    if (doc.is_array()) {
        if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>())
            errors.push_back(path + ": fewer than minItems entries");
        if (schema.contains("maxItems") && doc.size() > schema["maxItems"].get<std::size_t>())
            errors.push_back(path + ": more than maxItems entries");
        if (schema.contains("items")) {
            std::size_t index = 0;
            for (const auto& item : doc)
                validate_node(schema["items"], item, path + "[" + std::to_string(index++) + "]",
                              errors);
        }
    }
}

inline std::vector<std::string> validate(const json& schema, const json& doc) {
    std::vector<std::string> errors;
    validate_node(schema, doc, "#", errors);
    return errors;
}

inline std::vector<std::string> validate_file(const std::string& schema_path,
                                              const json& doc) {
    std::ifstream in(schema_path);
    if (!in) return {"cannot open schema " + schema_path};
    json schema = json::parse(in);
    return validate(schema, doc);
}

}  // namespace schemacheck
