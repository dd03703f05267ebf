#pragma once

#include <string>

#include "json.hpp"

// Validates documents against the subset of JSON Schema draft-07 that
// schema/report.schema.json uses: type (single or list), enum, required,
// properties, items, oneOf, and $ref into #/definitions. Returns an empty
// string on success and a path-qualified complaint otherwise.
namespace schema_check {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (t == "number") return value.is_number();
    if (t == "boolean") return value.is_boolean();
    if (t == "null") return value.is_null();
    return false;
}

inline std::string validate(const json& schema, const json& value, const json& root,
                            const std::string& where) {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) != 0) return where + ": unsupported $ref " + ref;
        const std::string name = ref.substr(prefix.size());
        if (!root.contains("definitions") || !root["definitions"].contains(name))
            return where + ": dangling $ref " + ref;
        return validate(root["definitions"][name], value, root, where);
    }

    if (schema.contains("oneOf")) {
        int hits = 0;
        std::string last;
        for (const json& branch : schema["oneOf"]) {
            std::string err = validate(branch, value, root, where);
            if (err.empty())
                ++hits;
            else
                last = err;
        }
        if (hits != 1)
            return where + ": oneOf matched " + std::to_string(hits) +
                   " branches (last failure: " + last + ")";
        return "";
    }

    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const json& alt : t)
                ok = ok || type_matches(value, alt.get<std::string>());
        }
        if (!ok) return where + ": type mismatch, value is " + value.dump();
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const json& allowed : schema["enum"]) ok = ok || value == allowed;
        if (!ok) return where + ": " + value.dump() + " not in enum";
    }

    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const json& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    return where + ": missing required key " + key.get<std::string>();
        }
        if (schema.contains("properties")) {
            for (const auto& [key, sub] : schema["properties"].items()) {
                if (!value.contains(key)) continue;
                std::string err = validate(sub, value[key], root, where + "." + key);
                if (!err.empty()) return err;
            }
        }
    }

    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const json& elem : value) {
            std::string err = validate(schema["items"], elem, root,
                                       where + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
            ++i;
        }
    }

    return "";
}

inline std::string validate_report(const json& schema, const json& doc) {
    return validate(schema, doc, schema, "$");
}

}  // namespace schema_check
