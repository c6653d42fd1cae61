#include "rf/bitstring.hpp"

#include <algorithm>

namespace rf {

BitString::BitString(std::string_view text)
{
    if (text == "e")
        return;
    for (char c : text)
        if (c != '0' && c != '1')
            throw std::invalid_argument("not a binary word: '" + std::string(text) + "'");
    bits_.assign(text);
}

BitString BitString::from_bits(const std::vector<bool>& bits)
{
    BitString s;
    s.bits_.reserve(bits.size());
    for (bool b : bits)
        s.bits_.push_back(b ? '1' : '0');
    return s;
}

bool BitString::at(std::size_t i) const
{
    if (i >= bits_.size())
        throw std::out_of_range("bit index past end of word");
    return bits_[i] == '1';
}

BitString BitString::prefix(std::size_t n) const
{
    BitString s;
    s.bits_ = bits_.substr(0, std::min(n, bits_.size()));
    return s;
}

BitString BitString::child(bool b) const
{
    BitString s = *this;
    s.bits_.push_back(b ? '1' : '0');
    return s;
}

BitString BitString::operator+(const BitString& rhs) const
{
    BitString s = *this;
    s.bits_ += rhs.bits_;
    return s;
}

BitString& BitString::push_back(bool b)
{
    bits_.push_back(b ? '1' : '0');
    return *this;
}

std::strong_ordering BitString::operator<=>(const BitString& rhs) const noexcept
{
    if (auto c = bits_.size() <=> rhs.bits_.size(); c != 0)
        return c;
    int r = bits_.compare(rhs.bits_);
    return r < 0 ? std::strong_ordering::less
                 : (r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool is_prefix(const BitString& a, const BitString& b) noexcept
{
    return a.size() <= b.size() && b.digits().compare(0, a.size(), a.digits()) == 0;
}

bool is_proper_prefix(const BitString& a, const BitString& b) noexcept
{
    return a.size() < b.size() && is_prefix(a, b);
}

bool comparable(const BitString& a, const BitString& b) noexcept
{
    return is_prefix(a, b) || is_prefix(b, a);
}

std::size_t meet_length(const BitString& a, const BitString& b) noexcept
{
    const auto& x = a.digits();
    const auto& y = b.digits();
    auto n = std::min(x.size(), y.size());
    auto it = std::mismatch(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n), y.begin());
    return static_cast<std::size_t>(it.first - x.begin());
}

BitString meet(const BitString& a, const BitString& b)
{
    return a.prefix(meet_length(a, b));
}

bool lex_less(const BitString& a, const BitString& b) noexcept
{
    return a.digits() < b.digits();
}

std::strong_ordering cmp_q(const BitString& a, const BitString& b) noexcept
{
    if (a == b)
        return std::strong_ordering::equal;
    std::size_t m = meet_length(a, b);
    if (m == a.size())  // a is a proper prefix of b
        return b[m] ? std::strong_ordering::less : std::strong_ordering::greater;
    if (m == b.size())
        return a[m] ? std::strong_ordering::greater : std::strong_ordering::less;
    return a[m] ? std::strong_ordering::greater : std::strong_ordering::less;
}

Rational q_value(const BitString& a)
{
    // Scale by 2^|a| to stay in integers: sum (2 a(i) - 1) 2^(|a| - 1 - i).
    using boost::multiprecision::cpp_int;
    cpp_int num = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num <<= 1;
        num += a[i] ? 1 : -1;
    }
    cpp_int den = 1;
    den <<= a.size();
    return Rational(num, den);
}

BitString q_between(const BitString& a, const BitString& b)
{
    if (!q_less(a, b))
        throw std::invalid_argument("q_between needs a <_Q b");
    if (is_proper_prefix(a, b))
        return b.child(false);
    if (is_proper_prefix(b, a))
        return a.child(true);
    return meet(a, b);
}

std::vector<BitString> words_up_to(std::size_t max_len)
{
    std::vector<BitString> out{BitString{}};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() < max_len) {
            out.push_back(out[i].child(false));
            out.push_back(out[i].child(true));
        }
    return out;  // breadth-first order is length-then-lex
}

std::vector<BitString> sorted_unique(std::vector<BitString> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace rf
