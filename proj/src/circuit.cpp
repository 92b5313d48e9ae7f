// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qndsim/circuit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qndsim/error.hpp"

namespace qndsim {

namespace {

double parse_real(std::string_view text) {
    double value = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last || !std::isfinite(value)) {
        throw DomainError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) {
        words.push_back(w);
    }
    return words;
}

class Parser {
   public:
    ModeTransform run(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            ++line_no;
            std::string_view line = text.substr(start, end - start);
            if (auto hash = line.find('#'); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            try {
                handle(split_words(line));
            } catch (const ParseError &) {
                throw;
            } catch (const Error &e) {
                throw ParseError(line_no, e.what());
            }
            start = end + 1;
        }
        if (channels_.empty()) {
            throw ParseError(line_no, "circuit declares no modes");
        }
        ModeTransform total = ModeTransform::identity(channels_);
        for (const auto &element : elements_) {
            total = compose(total, element);
        }
        return total.reordered(channels_, channels_);
    }

   private:
    void handle(const std::vector<std::string> &w) {
        if (w.empty()) {
            return;
        }
        const std::string &op = w[0];
        if (op == "mode") {
            declare(w);
        } else if (op == "bs") {
            expect_args(w, 4, 5, "bs <m1> <m2> T=<float> [flip]");
            double t = keyed_value(w[3], "T");
            bool flip = false;
            if (w.size() == 5) {
                if (w[4] != "flip") {
                    throw Error("unexpected token '" + w[4] + "' (expected 'flip')");
                }
                flip = true;
            }
            auto a = resolve(w[1]);
            auto b = resolve(w[2]);
            if (a.size() != b.size()) {
                throw Error("bs: cannot pair a polarized mode with an unpolarized one");
            }
            for (std::size_t k = 0; k < a.size(); ++k) {
                elements_.push_back(beam_splitter(BeamSplitterSpec{t, flip}, a[k], b[k]));
            }
        } else if (op == "ps") {
            expect_args(w, 3, 3, "ps <m> phi=<float>");
            double phi = keyed_value(w[2], "phi");
            for (const auto &id : resolve(w[1])) {
                elements_.push_back(phase_shifter(phi, id));
            }
        } else if (op == "rot") {
            expect_args(w, 3, 3, "rot <m> angle=<float>");
            double angle = keyed_value(w[2], "angle");
            elements_.push_back(polarization_rotator(angle, polarized_name(w[1])));
        } else if (op == "pbs") {
            expect_args(w, 3, 3, "pbs <m1> <m2>");
            elements_.push_back(polarizing_beam_splitter(polarized_name(w[1]), polarized_name(w[2])));
        } else if (op == "matrix") {
            raw_matrix(w);
        } else {
            throw Error("unknown element '" + op + "'");
        }
    }

    void declare(const std::vector<std::string> &w) {
        expect_args(w, 2, 3, "mode <name> [pol]");
        const std::string &name = w[1];
        if (name.find('.') != std::string::npos) {
            throw Error("mode names may not contain '.'");
        }
        if (modes_.count(name) != 0) {
            throw Error("mode '" + name + "' declared twice");
        }
        bool pol = false;
        if (w.size() == 3) {
            if (w[2] != "pol") {
                throw Error("unexpected token '" + w[2] + "' (expected 'pol')");
            }
            pol = true;
        }
        modes_[name] = pol;
        if (pol) {
            channels_.push_back(channel_h(name));
            channels_.push_back(channel_v(name));
        } else {
            channels_.push_back(channel(name));
        }
    }

    void raw_matrix(const std::vector<std::string> &w) {
        if (w.size() < 2) {
            throw Error("expected: matrix <k> <k*k complex entries>");
        }
        double kd = parse_real(w[1]);
        if (kd < 1 || kd != std::floor(kd)) {
            throw Error("matrix size must be a positive integer");
        }
        auto k = static_cast<std::size_t>(kd);
        if (k > channels_.size()) {
            throw Error("matrix " + std::to_string(k) + " exceeds the " + std::to_string(channels_.size()) +
                        " declared channels");
        }
        if (w.size() != 2 + k * k) {
            throw Error("matrix " + std::to_string(k) + " needs " + std::to_string(k * k) + " entries, got " +
                        std::to_string(w.size() - 2));
        }
        auto n = static_cast<Eigen::Index>(k);
        Eigen::MatrixXcd u(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                u(r, c) = parse_complex(w[2 + static_cast<std::size_t>(r * n + c)]);
            }
        }
        std::vector<ModeId> ids(channels_.begin(), channels_.begin() + static_cast<std::ptrdiff_t>(k));
        elements_.emplace_back(ids, ids, std::move(u));
    }

    std::vector<ModeId> resolve(const std::string &ref) const {
        auto dot = ref.find('.');
        std::string name = ref.substr(0, dot);
        auto it = modes_.find(name);
        if (it == modes_.end()) {
            throw Error("unknown mode '" + name + "'");
        }
        bool pol = it->second;
        if (dot == std::string::npos) {
            return pol ? polarized(name) : std::vector<ModeId>{channel(name)};
        }
        std::string suffix = ref.substr(dot + 1);
        if (!pol) {
            throw Error("mode '" + name + "' is not polarized");
        }
        if (suffix == "H") {
            return {channel_h(name)};
        }
        if (suffix == "V") {
            return {channel_v(name)};
        }
        throw Error("unknown polarization '" + suffix + "'");
    }

    std::string polarized_name(const std::string &ref) const {
        auto it = modes_.find(ref);
        if (it == modes_.end()) {
            throw Error("unknown mode '" + ref + "'");
        }
        if (!it->second) {
            throw Error("mode '" + ref + "' is not polarized");
        }
        return ref;
    }

    static void expect_args(const std::vector<std::string> &w, std::size_t lo, std::size_t hi, const char *usage) {
        if (w.size() < lo || w.size() > hi) {
            throw Error(std::string("expected: ") + usage);
        }
    }

    static double keyed_value(const std::string &token, const std::string &key) {
        std::string prefix = key + "=";
        if (token.rfind(prefix, 0) != 0) {
            throw Error("expected " + prefix + "<float>, got '" + token + "'");
        }
        return parse_real(std::string_view(token).substr(prefix.size()));
    }

    std::map<std::string, bool> modes_;
    std::vector<ModeId> channels_;
    std::vector<ModeTransform> elements_;
};

}  // namespace

Complex parse_complex(std::string_view text) {
    if (text.empty()) {
        throw DomainError("empty complex literal");
    }
    if (text.back() != 'i') {
        return {parse_real(text), 0.0};
    }
    std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](std::string_view s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_real(s);
    };
    if (split == std::string_view::npos) {
        return {0.0, imag_part(body)};
    }
    return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

ModeTransform parse_circuit(std::string_view text) {
    return Parser().run(text);
}

ModeTransform load_circuit(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open circuit file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_circuit(buffer.str());
}

}  // namespace qndsim
