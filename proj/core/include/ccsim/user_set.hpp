#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace ccsim {

/// Set of user ids drawn from [1:K], packed into one machine word.
/// Bit (k-1) holds user k; K is limited to 62 users.
class UserSet {
public:
    static constexpr int max_users = 62;

    constexpr UserSet() = default;

    static UserSet full(int k) {
        check_user_count(k);
        UserSet s;
        s.bits_ = (k == 0) ? 0 : (~uint64_t{0} >> (64 - k));
        return s;
    }

    static UserSet single(int user) {
        UserSet s;
        s.insert(user);
        return s;
    }

    static UserSet of(std::initializer_list<int> users) {
        UserSet s;
        for (int u : users) s.insert(u);
        return s;
    }

    static UserSet from_ids(const std::vector<int>& users) {
        UserSet s;
        for (int u : users) s.insert(u);
        return s;
    }

    void insert(int user) {
        check_user(user);
        bits_ |= uint64_t{1} << (user - 1);
    }

    void erase(int user) {
        check_user(user);
        bits_ &= ~(uint64_t{1} << (user - 1));
    }

    bool contains(int user) const {
        if (user < 1 || user > max_users) return false;
        return (bits_ >> (user - 1)) & 1;
    }

    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }

    bool subset_of(UserSet o) const { return (bits_ & ~o.bits_) == 0; }
    bool superset_of(UserSet o) const { return o.subset_of(*this); }
    bool intersects(UserSet o) const { return (bits_ & o.bits_) != 0; }

    UserSet with(int user) const {
        UserSet s = *this;
        s.insert(user);
        return s;
    }

    UserSet without(int user) const {
        UserSet s = *this;
        s.erase(user);
        return s;
    }

    friend UserSet operator|(UserSet a, UserSet b) { return UserSet(a.bits_ | b.bits_); }
    friend UserSet operator&(UserSet a, UserSet b) { return UserSet(a.bits_ & b.bits_); }
    friend UserSet setminus(UserSet a, UserSet b) { return UserSet(a.bits_ & ~b.bits_); }
    friend bool operator==(UserSet a, UserSet b) { return a.bits_ == b.bits_; }
    friend bool operator!=(UserSet a, UserSet b) { return a.bits_ != b.bits_; }

    /// Member ids in ascending order.
    std::vector<int> ids() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(size()));
        uint64_t b = bits_;
        while (b) {
            out.push_back(std::countr_zero(b) + 1);
            b &= b - 1;
        }
        return out;
    }

    int lowest() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }

    uint64_t raw() const { return bits_; }
    static UserSet from_raw(uint64_t bits) { return UserSet(bits); }

private:
    explicit constexpr UserSet(uint64_t bits) : bits_(bits) {}

    static void check_user(int user) {
        if (user < 1 || user > max_users)
            throw std::invalid_argument("user id out of range [1:62]");
    }
    static void check_user_count(int k) {
        if (k < 0 || k > max_users)
            throw std::invalid_argument("user count out of range [0:62]");
    }

    uint64_t bits_ = 0;
};

/// Orders sets by the lexicographic order of their ascending id lists,
/// e.g. {} < {1} < {1,2} < {1,3} < {2}. Used wherever cells or groups must
/// be iterated in a reproducible order.
inline bool lex_less(UserSet a, UserSet b) {
    if (a == b) return false;
    uint64_t c = a.raw() ^ b.raw();
    uint64_t low = c & (~c + 1);  // lowest differing element
    uint64_t above = ~(low | (low - 1));
    if (b.raw() & low) {
        // b owns the lowest differing element: a precedes b iff a has nothing past it
        return (a.raw() & above) == 0;
    }
    return (b.raw() & above) != 0;
}

/// All subsets of `ground` with exactly m members, in lex_less order.
std::vector<UserSet> subsets_of_size(UserSet ground, int m);

}  // namespace ccsim
