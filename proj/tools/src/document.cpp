#include "document.hpp"

#include <algorithm>
#include <cctype>

#include <multiroot/cli/runner.hpp>
#include <multiroot/error.hpp>

namespace multiroot::cli::detail
{

namespace
{

std::size_t line_at(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

} // namespace

Document::Document(std::string_view text, std::string source) : text_(text), source_(std::move(source))
{
    try {
        root_ = json::parse(text);
    } catch (const json::parse_error &e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw InputError(source_, line_at(text, byte), e.what());
    }
    if (!root_.is_object()) {
        throw InputError(source_, 1, "top level must be an object");
    }
}

std::size_t Document::line_of(std::string_view key) const
{
    const std::string quoted = "\"" + std::string(key) + "\"";
    std::size_t pos = text_.find(quoted);
    while (pos != std::string_view::npos) {
        std::size_t after = pos + quoted.size();
        while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after])) != 0) {
            ++after;
        }
        if (after < text_.size() && text_[after] == ':') {
            return line_at(text_, pos);
        }
        pos = text_.find(quoted, pos + 1);
    }
    return 1;
}

void Document::fail(std::string_view key, const std::string &message) const
{
    throw InputError(source_, line_of(key), message);
}

void Document::only_keys(const json &object, std::string_view where,
                         std::initializer_list<std::string_view> allowed) const
{
    for (const auto &item : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            fail(item.key(), "unknown key '" + item.key() + "' in " + std::string(where));
        }
    }
}

const json *Document::find(const json &object, std::string_view key) const
{
    const auto it = object.find(std::string(key));
    return it == object.end() ? nullptr : &*it;
}

const json &Document::require(const json &object, std::string_view key) const
{
    if (const json *v = find(object, key)) {
        return *v;
    }
    throw InputError(source_, 1, "missing required key '" + std::string(key) + "'");
}

std::string Document::string(const json &object, std::string_view key) const
{
    const json &v = require(object, key);
    if (!v.is_string()) {
        fail(key, "'" + std::string(key) + "' must be a string");
    }
    return v.get<std::string>();
}

long Document::integer(const json &object, std::string_view key) const
{
    const json &v = require(object, key);
    if (!v.is_number_integer()) {
        fail(key, "'" + std::string(key) + "' must be an integer");
    }
    return v.get<long>();
}

bool Document::boolean(const json &value, std::string_view key) const
{
    if (!value.is_boolean()) {
        fail(key, "'" + std::string(key) + "' must hold booleans");
    }
    return value.get<bool>();
}

Real Document::real(const json &value, std::string_view key) const
{
    try {
        if (value.is_string()) {
            return Real(std::string_view(value.get_ref<const std::string &>()));
        }
        if (value.is_number_integer()) {
            return Real(value.get<long>());
        }
        if (value.is_number()) {
            // The shortest decimal that reproduces the parsed double.
            return Real(std::string_view(value.dump()));
        }
    } catch (const Error &e) {
        fail(key, "'" + std::string(key) + "': " + e.what());
    }
    fail(key, "'" + std::string(key) + "' must hold numbers or decimal strings");
}

std::vector<Real> Document::reals(const json &value, std::string_view key) const
{
    if (!value.is_array()) {
        fail(key, "'" + std::string(key) + "' must be an array");
    }
    std::vector<Real> out;
    out.reserve(value.size());
    for (const auto &v : value) {
        out.push_back(real(v, key));
    }
    return out;
}

std::vector<int> Document::integers(const json &value, std::string_view key) const
{
    if (!value.is_array()) {
        fail(key, "'" + std::string(key) + "' must be an array");
    }
    std::vector<int> out;
    for (const auto &v : value) {
        if (!v.is_number_integer()) {
            fail(key, "'" + std::string(key) + "' must hold integers");
        }
        out.push_back(v.get<int>());
    }
    return out;
}

std::vector<bool> Document::booleans(const json &value, std::string_view key) const
{
    if (!value.is_array()) {
        fail(key, "'" + std::string(key) + "' must be an array");
    }
    std::vector<bool> out;
    for (const auto &v : value) {
        out.push_back(boolean(v, key));
    }
    return out;
}

std::string format_real(const Real &x, long bits)
{
    return x.to_string(decimal_digits_for(bits));
}

json real_array(std::span<const Real> values, long bits)
{
    json out = json::array();
    for (const auto &v : values) {
        out.push_back(format_real(v, bits));
    }
    return out;
}

} // namespace multiroot::cli::detail
