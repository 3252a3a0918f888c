#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "enumeration.hpp"
#include "errors.hpp"

namespace mcshane {

namespace detail {
inline double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty()) throw ParseError("complex literal '" + whole + "': missing number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        throw ParseError("complex literal '" + whole + "': cannot read '" + s + "'");
    return v;
}
}  // namespace detail

/// Reads `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`; whitespace is ignored.
inline cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("complex literal: empty");
    if (s.back() != 'i') return detail::parse_real(s, text);
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") im = "1";
    else if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : detail::parse_real(re, text), detail::parse_real(im, text)};
}

enum class RepKind { markov, markov_qf, monodromy, embed_su21 };

struct RepSpec {
    RepKind kind = RepKind::markov;
    std::vector<cplx> traces;
    std::string word;
    std::string text;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t a = 0;
    for (;;) {
        const std::size_t b = s.find(sep, a);
        out.push_back(s.substr(a, b == std::string::npos ? std::string::npos : b - a));
        if (b == std::string::npos) return out;
        a = b + 1;
    }
}

/// `markov:x,y,z` | `markov:x,y` | `monodromy:RL...` | `embed:su21:markov:x,y,z`.
inline RepSpec parse_rep(const std::string& text) {
    RepSpec r;
    r.text = text;
    std::string body = text;
    if (body.rfind("embed:su21:", 0) == 0) {
        r.kind = RepKind::embed_su21;
        body = body.substr(11);
        if (body.rfind("markov:", 0) != 0) throw ParseError("rep '" + text + "': embed:su21 expects a markov:... representation");
    }
    if (body.rfind("markov:", 0) == 0) {
        for (const auto& part : split(body.substr(7), ',')) r.traces.push_back(parse_complex(part));
        if (r.traces.size() == 2 && r.kind != RepKind::embed_su21) r.kind = RepKind::markov_qf;
        else if (r.traces.size() != 3) throw ParseError("rep '" + text + "': markov expects 3 traces (or x,y)");
        return r;
    }
    if (body.rfind("monodromy:", 0) == 0 && r.kind != RepKind::embed_su21) {
        r.kind = RepKind::monodromy;
        r.word = body.substr(10);
        require_monodromy_word(r.word);
        return r;
    }
    throw ParseError("rep '" + text + "': unknown form (markov:, monodromy:, embed:su21:markov:)");
}

inline Representation build_rep(const RepSpec& s, bool larger_root = false) {
    switch (s.kind) {
        case RepKind::markov: return build_markov(s.traces[0], s.traces[1], s.traces[2]);
        case RepKind::markov_qf: return build_quasifuchsian(s.traces[0], s.traces[1], larger_root);
        case RepKind::monodromy: return build_fibered(s.word);
        case RepKind::embed_su21: {
            for (const auto& t : s.traces)
                if (t.imag() != 0.0) throw DomainError("embed:su21 needs real traces");
            return embed_cfuchsian(build_fuchsian(s.traces[0].real(), s.traces[1].real(), s.traces[2].real()));
        }
    }
    throw DomainError("build_rep: unknown kind");
}

}  // namespace mcshane
