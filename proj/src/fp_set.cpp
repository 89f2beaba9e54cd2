#include "fpspec/fp_set.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "convolution.hpp"
#include "rng.hpp"
#include "fpspec/error.hpp"

namespace fpspec {

namespace {

// Bit vector of length n supporting "this |= rotate(src, shift)" one word at a
// time. The source is stored twice back to back so any rotation is a
// contiguous window.
class CyclicBits {
public:
    explicit CyclicBits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return ((words_[i / 64] >> (i % 64)) & 1U) != 0; }

    static std::vector<std::uint64_t> doubled(const std::vector<std::uint8_t>& member) {
        const std::size_t n = member.size();
        std::vector<std::uint64_t> w((2 * n + 63) / 64 + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (member[i] == 0) continue;
            w[i / 64] |= std::uint64_t{1} << (i % 64);
            w[(i + n) / 64] |= std::uint64_t{1} << ((i + n) % 64);
        }
        return w;
    }

    // result[j] |= src[(j - shift) mod n], with src given in doubled form.
    void or_rotated(const std::vector<std::uint64_t>& src2, std::size_t shift) {
        const std::size_t offset = n_ - shift % n_;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            const std::size_t bit = offset + 64 * k;
            const std::size_t w = bit / 64;
            const unsigned b = bit % 64;
            std::uint64_t v = src2[w] >> b;
            if (b != 0) v |= src2[w + 1] << (64 - b);
            words_[k] |= v;
        }
        if (n_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::vector<std::uint8_t> to_bytes() const {
        std::vector<std::uint8_t> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = test(i) ? 1 : 0;
        return out;
    }

private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

std::vector<std::uint8_t> exponent_bitmap(const PrimeField& field, const FpSet& s) {
    std::vector<std::uint8_t> bits(field.group_order(), 0);
    for (Elem x : s.elements()) bits[field.dlog(x)] = 1;
    return bits;
}

}  // namespace

FpSet::FpSet(Elem p) : p_(p), bitmap_(p, 0) {}

FpSet::FpSet(Elem p, std::span<const std::int64_t> values) : p_(p), bitmap_(p, 0) {
    const auto m = static_cast<std::int64_t>(p);
    for (std::int64_t v : values) {
        std::int64_t r = v % m;
        if (r < 0) r += m;
        bitmap_[static_cast<std::size_t>(r)] = 1;
    }
    for (Elem x = 0; x < p_; ++x) {
        if (bitmap_[x] != 0) elements_.push_back(x);
    }
}

FpSet FpSet::from_bitmap(Elem p, std::vector<std::uint8_t> bitmap) {
    if (bitmap.size() != p) fail(ErrorCode::InvalidArgument, "bitmap length differs from p");
    FpSet s(p);
    s.bitmap_ = std::move(bitmap);
    for (Elem x = 0; x < p; ++x) {
        if (s.bitmap_[x] != 0) {
            s.bitmap_[x] = 1;
            s.elements_.push_back(x);
        }
    }
    return s;
}

void require_no_zero(const FpSet& s, const char* what) {
    if (s.contains(0)) {
        fail(ErrorCode::ZeroInSet, std::string(what) + " contains 0");
    }
}

FpSet interval(const PrimeField& field, std::uint64_t n) {
    if (n < 1 || n > field.p() - 1) {
        fail(ErrorCode::OutOfRange, "interval length " + std::to_string(n) +
                                        " not in [1, p-1] for p = " + std::to_string(field.p()));
    }
    std::vector<std::uint8_t> bits(field.p(), 0);
    for (std::uint64_t x = 1; x <= n; ++x) bits[x] = 1;
    return FpSet::from_bitmap(field.p(), std::move(bits));
}

FpSet random_set(const PrimeField& field, std::uint64_t size, std::uint64_t seed,
                 bool avoid_zero) {
    const Elem p = field.p();
    const std::uint64_t available = avoid_zero ? p - 1 : p;
    if (size > available) {
        fail(ErrorCode::OutOfRange, "random_set size " + std::to_string(size) +
                                        " exceeds " + std::to_string(available));
    }
    std::vector<Elem> pool(available);
    for (std::uint64_t i = 0; i < available; ++i) pool[i] = static_cast<Elem>(avoid_zero ? i + 1 : i);

    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(p, 0);
    for (std::uint64_t i = 0; i < size; ++i) {
        const std::uint64_t j = i + detail::bounded(rng, available - i);
        std::swap(pool[i], pool[j]);
        bits[pool[i]] = 1;
    }
    return FpSet::from_bitmap(p, std::move(bits));
}

FpSet mult_subgroup(const PrimeField& field, std::uint64_t d) {
    const std::uint32_t order = field.group_order();
    if (d < 1 || order % d != 0) {
        fail(ErrorCode::NotADivisor,
             std::to_string(d) + " does not divide p - 1 = " + std::to_string(order));
    }
    const std::uint64_t step = order / d;
    std::vector<std::uint8_t> bits(field.p(), 0);
    for (std::uint64_t j = 0; j < d; ++j) bits[field.pow(step * j)] = 1;
    return FpSet::from_bitmap(field.p(), std::move(bits));
}

bool is_subgroup(const PrimeField& field, const FpSet& h) {
    if (h.empty() || h.contains(0) || !h.contains(1)) return false;
    // A finite nonempty subset closed under multiplication is a subgroup.
    for (Elem x : h.elements()) {
        for (Elem y : h.elements()) {
            if (!h.contains(field.mul(x, y))) return false;
        }
    }
    return true;
}

FpSet dilate(const PrimeField& field, const FpSet& a, Elem lam) {
    if (lam % field.p() == 0) fail(ErrorCode::ZeroElement, "dilation by 0");
    std::vector<std::uint8_t> bits(field.p(), 0);
    for (Elem x : a.elements()) bits[field.mul(x, lam % field.p())] = 1;
    return FpSet::from_bitmap(field.p(), std::move(bits));
}

FpSet coset(const PrimeField& field, const FpSet& h, Elem lam) {
    if (lam % field.p() == 0) fail(ErrorCode::ZeroElement, "coset representative is 0");
    if (!is_subgroup(field, h)) fail(ErrorCode::NotASubgroup, "coset base is not a subgroup");
    return dilate(field, h, lam);
}

FpSet sumset(const PrimeField& field, const FpSet& a, const FpSet& b) {
    const Elem p = field.p();
    if (a.empty() || b.empty()) return FpSet(p);
    const FpSet& shifts = a.size() <= b.size() ? a : b;
    const FpSet& base = a.size() <= b.size() ? b : a;
    std::vector<std::uint8_t> base_bits(base.bitmap().begin(), base.bitmap().end());
    const auto src = CyclicBits::doubled(base_bits);
    CyclicBits acc(p);
    for (Elem s : shifts.elements()) acc.or_rotated(src, s);
    return FpSet::from_bitmap(p, acc.to_bytes());
}

FpSet difference_set(const PrimeField& field, const FpSet& a, const FpSet& b) {
    std::vector<std::uint8_t> neg(field.p(), 0);
    for (Elem x : b.elements()) neg[field.neg(x)] = 1;
    return sumset(field, a, FpSet::from_bitmap(field.p(), std::move(neg)));
}

FpSet product_set(const PrimeField& field, const FpSet& a, const FpSet& b) {
    require_no_zero(a, "A");
    require_no_zero(b, "B");
    const Elem p = field.p();
    if (a.empty() || b.empty()) return FpSet(p);
    const FpSet& shifts = a.size() <= b.size() ? a : b;
    const FpSet& base = a.size() <= b.size() ? b : a;
    const auto src = CyclicBits::doubled(exponent_bitmap(field, base));
    CyclicBits acc(field.group_order());
    for (Elem s : shifts.elements()) acc.or_rotated(src, field.dlog(s));
    const auto exps = acc.to_bytes();
    std::vector<std::uint8_t> bits(p, 0);
    for (std::size_t e = 0; e < exps.size(); ++e) {
        if (exps[e] != 0) bits[field.pow(e)] = 1;
    }
    return FpSet::from_bitmap(p, std::move(bits));
}

u128 rep_sq_sum_aa(const PrimeField& field, const FpSet& a) {
    require_no_zero(a, "A");
    const Elem p = field.p();
    if (a.empty()) return 0;

    std::vector<std::uint64_t> exps(field.group_order(), 0);
    for (Elem x : a.elements()) exps[field.dlog(x)] = 1;
    const auto prod_counts = detail::cyclic_convolve(exps, exps);

    std::vector<std::uint64_t> r_aa(p, 0);
    for (std::size_t e = 0; e < prod_counts.size(); ++e) r_aa[field.pow(e)] = prod_counts[e];

    const auto r_sum = detail::cyclic_convolve(r_aa, r_aa);
    u128 total = 0;
    for (std::uint64_t v : r_sum) total += static_cast<u128>(v) * v;
    return total;
}

u128 rep_sq_sum_aa_brute(const PrimeField& field, const FpSet& a) {
    require_no_zero(a, "A");
    if (a.size() > kBruteAAMax) {
        fail(ErrorCode::TooLargeForBrute, "4-tuple enumeration limited to |A| <= " +
                                              std::to_string(kBruteAAMax));
    }
    std::vector<std::uint64_t> counts(field.p(), 0);
    const auto el = a.elements();
    for (Elem a1 : el) {
        for (Elem a2 : el) {
            const Elem prod12 = field.mul(a1, a2);
            for (Elem a3 : el) {
                for (Elem a4 : el) ++counts[field.add(prod12, field.mul(a3, a4))];
            }
        }
    }
    u128 total = 0;
    for (std::uint64_t v : counts) total += static_cast<u128>(v) * v;
    return total;
}

void write_set(std::ostream& out, const FpSet& s) {
    out << "p=" << s.modulus() << '\n';
    for (Elem x : s.elements()) out << x << '\n';
}

FpSet read_set(std::istream& in) {
    std::string line;
    std::uint64_t p = 0;
    std::vector<std::int64_t> values;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
        try {
            if (p == 0) {
                if (line.rfind("p=", 0) != 0) {
                    fail(ErrorCode::Io, "set file: expected header \"p=<p>\" on line " +
                                            std::to_string(lineno));
                }
                p = std::stoull(line.substr(2));
                continue;
            }
            std::size_t used = 0;
            values.push_back(std::stoll(line, &used));
            if (used != line.size()) throw std::invalid_argument(line);
        } catch (const std::logic_error&) {
            fail(ErrorCode::Io, "set file: bad value on line " + std::to_string(lineno));
        }
    }
    if (p == 0) fail(ErrorCode::Io, "set file: missing header \"p=<p>\"");
    if (p < 3 || !is_prime(p)) fail(ErrorCode::NotPrime, "set file: p=" + std::to_string(p) + " is not an odd prime");
    if (p > PrimeField::kMaxModulus) fail(ErrorCode::OutOfRange, "set file: p too large");
    for (std::int64_t v : values) {
        if (v < 0 || static_cast<std::uint64_t>(v) >= p) {
            fail(ErrorCode::OutOfRange, "set file: element " + std::to_string(v) +
                                            " outside [0, p)");
        }
    }
    return FpSet(static_cast<Elem>(p), values);
}

FpSet parse_set_list(Elem p, const std::string& text) {
    std::vector<std::int64_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        try {
            std::size_t used = 0;
            const std::string trimmed = item.substr(first, item.find_last_not_of(" \t") - first + 1);
            values.push_back(std::stoll(trimmed, &used));
            if (used != trimmed.size()) throw std::invalid_argument(trimmed);
        } catch (const std::logic_error&) {
            fail(ErrorCode::InvalidArgument, "bad set element \"" + item + "\"");
        }
    }
    return FpSet(p, values);
}

}  // namespace fpspec
