#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ncomp {

/// A precomputed term: a numeral or a symbolic constant.
///
/// Precomputed terms are totally ordered. Numerals follow integer order and
/// all numerals precede all symbolic constants; symbolic constants are ordered
/// lexicographically by name. The second property guarantees that no symbolic
/// constant lies between two numerals.
class Symbol {
public:
    Symbol() : v_(std::int64_t{0}) {}
    static Symbol numeral(std::int64_t n) { return Symbol(n); }
    static Symbol constant(std::string name) { return Symbol(std::move(name)); }

    bool               is_numeral() const noexcept { return v_.index() == 0; }
    bool               is_constant() const noexcept { return v_.index() == 1; }
    std::int64_t       value() const { return std::get<0>(v_); }
    const std::string& name() const { return std::get<1>(v_); }

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
        if (a.is_numeral() != b.is_numeral()) {
            return a.is_numeral() ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (a.is_numeral()) {
            return a.value() <=> b.value();
        }
        int c = a.name().compare(b.name());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    std::size_t hash() const noexcept {
        return is_numeral() ? std::hash<std::int64_t>{}(value()) : std::hash<std::string>{}(name()) ^ 0x9e3779b97f4a7c15ULL;
    }

private:
    explicit Symbol(std::int64_t n) : v_(n) {}
    explicit Symbol(std::string s) : v_(std::move(s)) {}
    std::variant<std::int64_t, std::string> v_;
};

inline std::strong_ordering compare_precomputed(const Symbol& a, const Symbol& b) { return a <=> b; }

inline std::string to_string(const Symbol& s) { return s.is_numeral() ? std::to_string(s.value()) : s.name(); }
inline std::ostream& operator<<(std::ostream& os, const Symbol& s) { return os << to_string(s); }

/// A ground atom p(t1,...,tn) over precomputed terms.
struct GroundAtom {
    std::string         predicate;
    std::vector<Symbol> args;

    friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
    friend std::strong_ordering operator<=>(const GroundAtom& a, const GroundAtom& b) {
        if (auto c = a.predicate.compare(b.predicate); c != 0) {
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (auto c = a.args.size() <=> b.args.size(); c != 0) {
            return c;
        }
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (auto c = a.args[i] <=> b.args[i]; c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }
};

struct SymbolHash {
    std::size_t operator()(const Symbol& s) const noexcept { return s.hash(); }
};

struct GroundAtomHash {
    std::size_t operator()(const GroundAtom& a) const noexcept {
        std::size_t h = std::hash<std::string>{}(a.predicate);
        for (const auto& s : a.args) {
            h ^= s.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline std::string to_string(const GroundAtom& a) {
    std::string out = a.predicate;
    if (!a.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ',';
            out += to_string(a.args[i]);
        }
        out += ')';
    }
    return out;
}

} // namespace ncomp
