#include "cwerank/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cwerank {

namespace {

std::string shortest_fixed(double value)
{
    std::array<char, 512> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed);
    if (ec != std::errc{}) {
        throw std::runtime_error("cannot format real value");
    }
    return std::string(buf.data(), end);
}

} // namespace

std::string format_real(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("cannot format real value");
    }
    return std::string(buf.data(), end);
}

std::string format_half_up(double value, int decimals)
{
    if (!std::isfinite(value)) {
        return format_real(value);
    }
    std::string text = shortest_fixed(value);
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.erase(0, 1);
    }
    auto dot = text.find('.');
    std::string int_part = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac_part = dot == std::string::npos ? std::string{} : text.substr(dot + 1);

    std::string digits = int_part + frac_part;
    const std::size_t int_len = int_part.size();
    const std::size_t keep = int_len + static_cast<std::size_t>(decimals);
    if (digits.size() <= keep) {
        digits.append(keep - digits.size(), '0');
    } else {
        const bool round_up = digits[keep] >= '5';
        digits.resize(keep);
        if (round_up) {
            std::size_t i = digits.size();
            while (i > 0) {
                --i;
                if (digits[i] == '9') {
                    digits[i] = '0';
                } else {
                    ++digits[i];
                    break;
                }
                if (i == 0) {
                    digits.insert(digits.begin(), '1');
                    break;
                }
            }
        }
    }
    const std::size_t new_int_len = digits.size() - static_cast<std::size_t>(decimals);
    std::string out = digits.substr(0, new_int_len);
    if (decimals > 0) {
        out += '.';
        out += digits.substr(new_int_len);
    }
    const bool all_zero = out.find_first_not_of("0.") == std::string::npos;
    if (negative && !all_zero) {
        out.insert(out.begin(), '-');
    }
    return out;
}

std::string csv_field(std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace cwerank
