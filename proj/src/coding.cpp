#include "selfaffine/coding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace selfaffine {

namespace {

constexpr double kBoundaryTol = 1e-13;

int digit_from_char(char ch) {
    if (ch >= '1' && ch <= '9') return ch - '0';
    if (ch >= 'A' && ch <= 'Z') return ch - 'A' + 10;
    if (ch >= 'a' && ch <= 'z') return ch - 'a' + 10;
    if (ch == '0') return 36;
    return -1;
}

char char_from_digit(int d) {
    if (d >= 1 && d <= 9) return static_cast<char>('0' + d);
    if (d >= 10 && d <= 35) return static_cast<char>('A' + d - 10);
    if (d == 36) return '0';
    throw std::invalid_argument("digit out of the text-format range 1..36");
}

std::vector<int> parse_digit_run(const std::string& s, std::size_t m) {
    std::vector<int> out;
    for (char ch : s) {
        int d = digit_from_char(ch);
        if (d < 0) throw std::invalid_argument(std::string("invalid coding character '") + ch + "'");
        if (d > static_cast<int>(m))
            throw std::invalid_argument("coding digit exceeds the number of intervals");
        out.push_back(d);
    }
    return out;
}

// Coding starting with the given digits and continuing with `rest`.
Coding prepend(std::vector<int> head, const Coding& rest) {
    head.insert(head.end(), rest.prefix.begin(), rest.prefix.end());
    return canonicalized(Coding{std::move(head), rest.tail});
}

// Suffix of cd starting at 0-based position n (cd must have enough digits).
Coding suffix_of(const Coding& cd, std::size_t n) {
    if (n <= cd.prefix.size()) {
        return Coding{std::vector<int>(cd.prefix.begin() + n, cd.prefix.end()), cd.tail};
    }
    std::size_t r = (n - cd.prefix.size()) % cd.tail.size();
    std::vector<int> rotated(cd.tail.begin() + r, cd.tail.end());
    rotated.insert(rotated.end(), cd.tail.begin(), cd.tail.begin() + r);
    return Coding{{}, rotated};
}

// Smallest n >= 1 such that the suffix of cd at n is the coding of 0 or 1.
// Returns (n, endpoint is 1).  Requires a periodic coding.
std::optional<std::pair<std::size_t, bool>> endpoint_suffix(const SelfAffineSystem& sys,
                                                            const Coding& cd) {
    if (!cd.periodic()) return std::nullopt;
    Coding cz = canonicalized(coding_of_zero(sys));
    Coding co = canonicalized(coding_of_one(sys));
    std::size_t limit = cd.prefix.size() + cd.tail.size();
    for (std::size_t n = 1; n <= limit; ++n) {
        Coding suf = canonicalized(suffix_of(cd, n));
        if (coding_equal(suf, cz)) return std::make_pair(n, false);
        if (coding_equal(suf, co)) return std::make_pair(n, true);
    }
    return std::nullopt;
}

}  // namespace

int Coding::digit(std::size_t k) const {
    if (k < prefix.size()) return prefix[k];
    if (tail.empty()) throw std::out_of_range("finite coding has no digit at this position");
    return tail[(k - prefix.size()) % tail.size()];
}

std::vector<int> Coding::first_digits(std::size_t n) const {
    if (tail.empty() && n > prefix.size())
        throw std::out_of_range("finite coding is shorter than requested");
    std::vector<int> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = digit(k);
    return out;
}

Coding canonicalized(Coding cd) {
    if (!cd.tail.empty()) {
        // Minimal period.
        std::size_t len = cd.tail.size();
        for (std::size_t p = 1; p <= len / 2; ++p) {
            if (len % p != 0) continue;
            bool periodic = true;
            for (std::size_t k = p; k < len && periodic; ++k)
                periodic = (cd.tail[k] == cd.tail[k % p]);
            if (periodic) {
                cd.tail.resize(p);
                break;
            }
        }
        // Absorb matching prefix digits into the tail rotation.
        while (!cd.prefix.empty() && cd.prefix.back() == cd.tail.back()) {
            cd.prefix.pop_back();
            std::rotate(cd.tail.rbegin(), cd.tail.rbegin() + 1, cd.tail.rend());
        }
    }
    return cd;
}

bool coding_equal(const Coding& a, const Coding& b) {
    Coding ca = canonicalized(a);
    Coding cb = canonicalized(b);
    return ca.prefix == cb.prefix && ca.tail == cb.tail;
}

int coding_compare(const Coding& a, const Coding& b) {
    std::size_t pa = a.tail.empty() ? 1 : a.tail.size();
    std::size_t pb = b.tail.empty() ? 1 : b.tail.size();
    std::size_t lim = std::max(a.prefix.size(), b.prefix.size()) + 2 * std::lcm(pa, pb) + 2;
    lim = std::min<std::size_t>(lim, 100000);
    auto dig = [](const Coding& cd, std::size_t k) {
        if (cd.tail.empty() && k >= cd.prefix.size()) return 0;  // pad finite codings
        return cd.digit(k);
    };
    for (std::size_t k = 0; k < lim; ++k) {
        int da = dig(a, k);
        int db = dig(b, k);
        if (da != db) return da < db ? -1 : 1;
    }
    return 0;
}

Coding parse_coding(const std::string& text, std::size_t m) {
    std::size_t bar = text.find('|');
    if (bar != std::string::npos && text.find('|', bar + 1) != std::string::npos)
        throw std::invalid_argument("coding text has more than one '|'");
    Coding cd;
    if (bar == std::string::npos) {
        cd.prefix = parse_digit_run(text, m);
    } else {
        cd.prefix = parse_digit_run(text.substr(0, bar), m);
        cd.tail = parse_digit_run(text.substr(bar + 1), m);
    }
    return cd;
}

std::string format_coding(const Coding& cd) {
    std::string out;
    for (int d : cd.prefix) out += char_from_digit(d);
    out += '|';
    for (int d : cd.tail) out += char_from_digit(d);
    return out;
}

Coding relabel_reversed(const Coding& cd, std::size_t m) {
    Coding out = cd;
    for (int& d : out.prefix) d = static_cast<int>(m) + 1 - d;
    for (int& d : out.tail) d = static_cast<int>(m) + 1 - d;
    return out;
}

BasicInterval interval_of(const SelfAffineSystem& sys, const std::vector<int>& digits) {
    double A = 1.0;
    double B = 0.0;
    for (int d : digits) {
        if (d < 1 || d > static_cast<int>(sys.m))
            throw std::invalid_argument("digit out of range");
        std::size_t i = static_cast<std::size_t>(d);
        double sign = sys.epsilon[i - 1] ? -1.0 : 1.0;
        B += A * sys.sigma(i);
        A *= sign * sys.c[i - 1];
    }
    BasicInterval iv;
    iv.digits = digits;
    iv.left = std::min(B, A + B);
    iv.right = std::max(B, A + B);
    return iv;
}

Coding coding_of_zero(const SelfAffineSystem& sys) {
    int m = static_cast<int>(sys.m);
    if (sys.epsilon[0] == 0) return Coding{{}, {1}};
    if (sys.epsilon[sys.m - 1] == 0) return Coding{{1}, {m}};
    return Coding{{}, {1, m}};
}

Coding coding_of_one(const SelfAffineSystem& sys) {
    int m = static_cast<int>(sys.m);
    if (sys.epsilon[sys.m - 1] == 0) return Coding{{}, {m}};
    if (sys.epsilon[0] == 0) return Coding{{m}, {1}};
    return Coding{{}, {m, 1}};
}

CodingResult standard_coding(const SelfAffineSystem& sys, double t, std::size_t depth) {
    if (t < -kBoundaryTol || t > 1.0 + kBoundaryTol)
        throw std::invalid_argument("t must lie in [0,1]");
    CodingResult res;
    if (std::abs(t) <= kBoundaryTol) {
        res.standard = canonicalized(coding_of_zero(sys));
        res.exact = true;
        return res;
    }
    if (std::abs(t - 1.0) <= kBoundaryTol) {
        res.standard = canonicalized(coding_of_one(sys));
        res.exact = true;
        return res;
    }

    std::vector<double> cum(sys.m + 1, 0.0);
    for (std::size_t i = 1; i <= sys.m; ++i) cum[i] = cum[i - 1] + sys.c[i - 1];
    double min_c = *std::min_element(sys.c.begin(), sys.c.end());

    std::vector<int> digits;
    double x = t;
    double thr = kBoundaryTol;
    for (std::size_t step = 0; step < depth; ++step) {
        if (thr >= 0.25 * min_c) break;  // tolerance would swamp the partition
        // Branch point: t is a shared endpoint of two adjacent intervals.
        for (std::size_t j = 1; j + 1 <= sys.m; ++j) {
            if (std::abs(x - cum[j]) <= thr) {
                // Right endpoint of I_j and left endpoint of I_{j+1}.
                Coding via_low = prepend(
                    [&] {
                        auto w = digits;
                        w.push_back(static_cast<int>(j));
                        return w;
                    }(),
                    sys.epsilon[j - 1] == 0 ? coding_of_one(sys) : coding_of_zero(sys));
                Coding via_high = prepend(
                    [&] {
                        auto w = digits;
                        w.push_back(static_cast<int>(j + 1));
                        return w;
                    }(),
                    sys.epsilon[j] == 0 ? coding_of_zero(sys) : coding_of_one(sys));
                res.standard = via_high;
                res.alternate = via_low;
                res.exact = true;
                return res;
            }
        }
        std::size_t j = 1;
        while (j < sys.m && x >= cum[j]) ++j;
        digits.push_back(static_cast<int>(j));
        if (sys.epsilon[j - 1] == 0)
            x = (x - cum[j - 1]) / sys.c[j - 1];
        else
            x = (cum[j] - x) / sys.c[j - 1];
        x = std::clamp(x, 0.0, 1.0);
        thr /= sys.c[j - 1];
    }
    res.standard = Coding{digits, {}};
    res.exact = false;
    return res;
}

std::optional<std::pair<Coding, Coding>> endpoint_codings(const SelfAffineSystem& sys,
                                                          const Coding& cd_in) {
    Coding cd = canonicalized(cd_in);
    if (!cd.periodic()) return std::nullopt;
    if (coding_equal(cd, coding_of_zero(sys)) || coding_equal(cd, coding_of_one(sys)))
        return std::make_pair(cd, cd);
    auto hit = endpoint_suffix(sys, cd);
    if (!hit) return std::nullopt;
    auto [n, at_one] = *hit;
    std::vector<int> w = cd.first_digits(n);
    int j = w.back();
    std::vector<int> head(w.begin(), w.end() - 1);
    int m = static_cast<int>(sys.m);
    int eps_j = sys.epsilon[j - 1];
    // Is phi_j(endpoint) the left or the right endpoint of I_j?
    bool left_end = at_one ? (eps_j == 1) : (eps_j == 0);
    Coding other;
    if (left_end) {
        if (j <= 1) throw std::logic_error("endpoint_codings: branch at the left edge of I_1");
        auto w2 = head;
        w2.push_back(j - 1);
        other = prepend(std::move(w2),
                        sys.epsilon[j - 2] == 0 ? coding_of_one(sys) : coding_of_zero(sys));
        return std::make_pair(std::move(other), std::move(cd));
    }
    if (j >= m) throw std::logic_error("endpoint_codings: branch at the right edge of I_m");
    auto w2 = head;
    w2.push_back(j + 1);
    other = prepend(std::move(w2),
                    sys.epsilon[j] == 0 ? coding_of_zero(sys) : coding_of_one(sys));
    return std::make_pair(std::move(cd), std::move(other));
}

DigitStats digit_stats(const SelfAffineSystem& sys, const Coding& cd, std::size_t n) {
    if (n == 0) throw std::invalid_argument("digit_stats: n must be positive");
    std::vector<int> digits = cd.first_digits(n);  // throws if unavailable
    DigitStats st;
    st.n = n;
    st.counts.assign(sys.m, 0);
    for (int d : digits) {
        if (d < 1 || d > static_cast<int>(sys.m))
            throw std::invalid_argument("digit out of range");
        ++st.counts[static_cast<std::size_t>(d - 1)];
    }
    int m = static_cast<int>(sys.m);
    std::size_t L = 0;
    while (L < n && digits[n - 1 - L] == m) ++L;
    st.run_len = L;
    if (L == n) {
        st.chi = std::nullopt;
        return st;
    }
    int i = digits[n - 1 - L];
    int eps_i = sys.epsilon[i - 1];
    int arrow = eps_i == 0 ? i + 1 : i - 1;
    int chi = 0;
    if (arrow >= 1 && arrow <= m && sys.epsilon[arrow - 1] == eps_i && sys.lambda(arrow) > 0.0)
        chi = 1;
    st.chi = chi;
    return st;
}

std::vector<double> digit_frequencies(const SelfAffineSystem& sys, const Coding& cd_in) {
    Coding cd = canonicalized(cd_in);
    if (!cd.periodic())
        throw std::invalid_argument("digit_frequencies: coding must be eventually periodic");
    std::vector<double> freq(sys.m, 0.0);
    for (int d : cd.tail) {
        if (d < 1 || d > static_cast<int>(sys.m))
            throw std::invalid_argument("digit out of range");
        freq[static_cast<std::size_t>(d - 1)] += 1.0;
    }
    for (double& f : freq) f /= static_cast<double>(cd.tail.size());
    return freq;
}

}  // namespace selfaffine
