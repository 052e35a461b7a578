#ifndef MULTIROOT_CLI_DOCUMENT_HPP
#define MULTIROOT_CLI_DOCUMENT_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <multiroot/real.hpp>

namespace multiroot::cli::detail
{

using json = nlohmann::ordered_json;

// A parsed JSON document that reports schema errors at the line of the
// offending key. Every key of the problem and report schemas is unique, so the
// first occurrence of "key": locates it.
class Document
{
public:
    // Throws InputError on a syntax error.
    Document(std::string_view text, std::string source);

    [[nodiscard]] const json &root() const noexcept { return root_; }
    [[nodiscard]] const std::string &source() const noexcept { return source_; }
    [[nodiscard]] std::size_t line_of(std::string_view key) const;

    [[noreturn]] void fail(std::string_view key, const std::string &message) const;

    // Rejects keys of `object` outside `allowed`.
    void only_keys(const json &object, std::string_view where, std::initializer_list<std::string_view> allowed) const;

    [[nodiscard]] const json &require(const json &object, std::string_view key) const;
    [[nodiscard]] const json *find(const json &object, std::string_view key) const;

    [[nodiscard]] std::string string(const json &object, std::string_view key) const;
    [[nodiscard]] long integer(const json &object, std::string_view key) const;
    [[nodiscard]] bool boolean(const json &value, std::string_view key) const;
    // A decimal string or a JSON number, read at the working precision.
    [[nodiscard]] Real real(const json &value, std::string_view key) const;
    [[nodiscard]] std::vector<Real> reals(const json &value, std::string_view key) const;
    [[nodiscard]] std::vector<int> integers(const json &value, std::string_view key) const;
    [[nodiscard]] std::vector<bool> booleans(const json &value, std::string_view key) const;

private:
    std::string_view text_;
    std::string source_;
    json root_;
};

// Decimal string with enough significant digits to round-trip at `bits`.
[[nodiscard]] std::string format_real(const Real &x, long bits);
[[nodiscard]] json real_array(std::span<const Real> values, long bits);

} // namespace multiroot::cli::detail

namespace multiroot::cli
{
struct SolveOutcome;
}

namespace multiroot::cli::detail
{

[[nodiscard]] json verification_json(const SolveOutcome &outcome, long bits);

} // namespace multiroot::cli::detail

#endif
