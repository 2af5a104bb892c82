#include "passcast/rcg.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "passcast/error.hpp"
#include "passcast/sexpr.hpp"
#include "passcast/text.hpp"

namespace passcast {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

/// Identifier following the opening parenthesis, e.g. "show".
std::string_view head_of(std::string_view line) {
    std::size_t i = 1;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '(' && line[i] != ')') ++i;
    return line.substr(start, i - start);
}

double number_at(const SExpr& node, std::size_t line_no, std::string_view what) {
    if (node.is_list) throw ParseError(line_no, node.offset, "expected number for " + std::string(what));
    double v = 0.0;
    const char* first = node.atom.data();
    const char* last = first + node.atom.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line_no, node.offset, "bad number '" + node.atom + "' for " + std::string(what));
    }
    if (!std::isfinite(v)) throw MalformedFrame(line_no, "non-finite " + std::string(what));
    return v;
}

int integer_at(const SExpr& node, std::size_t line_no, std::string_view what) {
    if (node.is_list) throw ParseError(line_no, node.offset, "expected integer for " + std::string(what));
    int v = 0;
    const char* first = node.atom.data();
    const char* last = first + node.atom.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line_no, node.offset, "bad integer '" + node.atom + "' for " + std::string(what));
    }
    return v;
}

Snapshot decode_show(const SExpr& tree, std::size_t line_no) {
    const auto& items = tree.items;
    if (items.size() < 3 || items[0].is_list || items[0].atom != "show") {
        throw ParseError(line_no, tree.offset, "expected (show <cycle> <ball> <player>*)");
    }
    Snapshot s = Snapshot::empty();
    s.playmode = PlayMode::play_on();
    s.cycle = integer_at(items[1], line_no, "cycle");
    if (s.cycle < 0) throw MalformedFrame(line_no, "negative cycle");

    const SExpr& ball = items[2];
    if (!ball.is_list || ball.items.size() < 5 || !ball.items[0].is_list || ball.items[0].items.size() != 1 ||
        ball.items[0].items[0].atom != "b") {
        throw ParseError(line_no, ball.offset, "expected ball group ((b) x y vx vy)");
    }
    s.ball_pos = {number_at(ball.items[1], line_no, "ball x"), number_at(ball.items[2], line_no, "ball y")};
    s.ball_vel = {number_at(ball.items[3], line_no, "ball vx"), number_at(ball.items[4], line_no, "ball vy")};

    std::array<bool, kPlayerCount> seen{};
    std::size_t count = 0;
    for (std::size_t k = 3; k < items.size(); ++k) {
        const SExpr& p = items[k];
        if (!p.is_list || p.items.size() < 7 || !p.items[0].is_list || p.items[0].items.size() != 2) {
            throw ParseError(line_no, p.offset, "expected player group ((<side> <unum>) ...)");
        }
        const SExpr& side_node = p.items[0].items[0];
        if (side_node.is_list || (side_node.atom != "l" && side_node.atom != "r")) {
            throw ParseError(line_no, side_node.offset, "player side must be l or r");
        }
        const Side side = side_node.atom == "l" ? Side::Left : Side::Right;
        const int unum = integer_at(p.items[0].items[1], line_no, "unum");
        if (unum < 1 || unum > kTeamSize) {
            throw MalformedFrame(line_no, "unum " + std::to_string(unum) + " out of range");
        }
        // items: id, type, state, x, y, vx, vy, body, neck, ... ; trailing groups ignored.
        for (std::size_t a = 1; a <= 6; ++a) {
            if (p.items[a].is_list) throw ParseError(line_no, p.items[a].offset, "unexpected group in player header");
        }
        PlayerState& slot = s.player(side, unum);
        const std::size_t idx = Snapshot::index_of(side, unum);
        if (seen[idx]) {
            throw MalformedFrame(line_no, std::string("duplicate player ") + side_char(side) + ' ' + std::to_string(unum));
        }
        seen[idx] = true;
        slot.pos = {number_at(p.items[3], line_no, "player x"), number_at(p.items[4], line_no, "player y")};
        slot.vel = {number_at(p.items[5], line_no, "player vx"), number_at(p.items[6], line_no, "player vy")};
        ++count;
    }
    if (count != kPlayerCount) {
        throw MalformedFrame(line_no, "expected 22 players, found " + std::to_string(count));
    }
    if (auto problem = s.check()) throw MalformedFrame(line_no, *problem);
    return s;
}

class LogParser {
public:
    explicit LogParser(bool lenient) : lenient_(lenient) {}

    void feed(std::string_view raw, std::size_t line_no) {
        const std::string_view line = trim(raw);
        if (line.empty()) return;
        if (line.front() != '(') {
            if (!seen_content_ && line.starts_with("ULG")) {
                seen_content_ = true;
                return;
            }
            seen_content_ = true;
            warn(line_no, "unrecognized line");
            return;
        }
        seen_content_ = true;
        const std::string_view head = head_of(line);
        try {
            if (head == "show") {
                add_snapshot(decode_show(scan_sexpr(line, line_no), line_no), line_no);
            } else if (head == "playmode") {
                on_playmode(scan_sexpr(line, line_no), line_no);
            } else if (head == "team") {
                on_team(scan_sexpr(line, line_no), line_no);
            } else if (head == "server_param" || head == "player_param" || head == "player_type" ||
                       head == "msg" || head == "draw") {
                // Known records that carry nothing the pipeline uses.
            } else {
                warn(line_no, "unrecognized record '" + std::string(head) + "'");
            }
        } catch (const ParseError& e) {
            if (!lenient_) throw;
            warn(line_no, e.what());
        } catch (const MalformedFrame& e) {
            if (!lenient_) throw;
            warn(line_no, e.what());
        }
    }

    ParsedLog finish() { return std::move(log_); }

private:
    void warn(std::size_t line_no, std::string message) { log_.warnings.push_back({line_no, std::move(message)}); }

    void add_snapshot(Snapshot s, std::size_t line_no) {
        s.playmode = playmode_;
        auto& snaps = log_.snapshots;
        if (!snaps.empty()) {
            if (snaps.back().cycle == s.cycle) {
                snaps.back() = s;
                return;
            }
            if (snaps.back().cycle > s.cycle) {
                throw MalformedFrame(line_no, "cycle " + std::to_string(s.cycle) + " precedes cycle " +
                                                  std::to_string(snaps.back().cycle));
            }
        }
        snaps.push_back(s);
    }

    void on_playmode(const SExpr& tree, std::size_t line_no) {
        if (tree.items.size() != 3 || tree.items[2].is_list) {
            throw ParseError(line_no, tree.offset, "expected (playmode <cycle> <mode>)");
        }
        integer_at(tree.items[1], line_no, "cycle");
        playmode_ = PlayMode::from_name(tree.items[2].atom);
    }

    void on_team(const SExpr& tree, std::size_t line_no) {
        if (tree.items.size() < 4 || tree.items[2].is_list || tree.items[3].is_list) {
            throw ParseError(line_no, tree.offset, "expected (team <cycle> <left> <right> ...)");
        }
        log_.left_team = tree.items[2].atom;
        log_.right_team = tree.items[3].atom;
    }

    bool lenient_;
    bool seen_content_ = false;
    PlayMode playmode_{PlayMode::Kind::BeforeKickOff, std::nullopt};
    ParsedLog log_;
};

}  // namespace

ParsedLog parse_log(std::istream& in, bool lenient) {
    LogParser parser(lenient);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) parser.feed(line, ++line_no);
    return parser.finish();
}

ParsedLog parse_log_text(std::string_view text, bool lenient) {
    LogParser parser(lenient);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        parser.feed(text.substr(pos, end - pos), ++line_no);
        pos = end + 1;
    }
    return parser.finish();
}

std::string read_log_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw std::runtime_error("cannot read " + path.string());
    if (bytes.size() < 2 || static_cast<unsigned char>(bytes[0]) != 0x1f ||
        static_cast<unsigned char>(bytes[1]) != 0x8b) {
        return bytes;
    }

    gzFile gz = gzopen(path.string().c_str(), "rb");
    if (gz == nullptr) throw std::runtime_error("cannot open gzip stream " + path.string());
    std::string out;
    std::array<char, 1 << 16> buf{};
    for (;;) {
        const int n = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()));
        if (n < 0) {
            int errnum = 0;
            const std::string msg = gzerror(gz, &errnum);
            gzclose(gz);
            throw std::runtime_error("gzip error in " + path.string() + ": " + msg);
        }
        if (n == 0) break;
        out.append(buf.data(), static_cast<std::size_t>(n));
    }
    gzclose(gz);
    return out;
}

ParsedLog parse_log_file(const std::filesystem::path& path, bool lenient) {
    return parse_log_text(read_log_bytes(path), lenient);
}

Snapshot parse_show_line(std::string_view line, std::size_t line_no) {
    return decode_show(scan_sexpr(trim(line), line_no), line_no);
}

std::string format_show(const Snapshot& s) {
    std::string out = "(show " + std::to_string(s.cycle) + " ((b) " + format_double(s.ball_pos.x) + ' ' +
                      format_double(s.ball_pos.y) + ' ' + format_double(s.ball_vel.x) + ' ' +
                      format_double(s.ball_vel.y) + ')';
    for (const auto& p : s.players) {
        out += " ((";
        out += side_char(p.side);
        out += ' ' + std::to_string(p.unum) + ") 0 0x1 " + format_double(p.pos.x) + ' ' + format_double(p.pos.y) +
               ' ' + format_double(p.vel.x) + ' ' + format_double(p.vel.y) +
               " 0 0 (v h 90) (s 8000 1 1 0) (c 0 0 0 0 0 0 0 0 0 0 0))";
    }
    out += ')';
    return out;
}

}  // namespace passcast
