#include "edscm/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace edscm {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string remove_spaces(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }),
            s.end());
    return s;
}

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rat parse_rational(const std::string& in) {
    std::string s = remove_spaces(in);
    size_t slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
        throw ParseError("cannot parse rational: '" + in + "'");
    Rat q(Int(num), Int(den));
    if (q.get_den() == 0) throw ParseError("zero denominator: '" + in + "'");
    q.canonicalize();
    return q;
}

GaussianRat parse_gaussian_rational(const std::string& in) {
    std::string s = remove_spaces(in);
    if (s.empty()) throw ParseError("empty number");
    if (s.back() != 'i' && s.back() != 'I') return GaussianRat(parse_rational(s));

    s.pop_back();
    if (!s.empty() && s.back() == '*') s.pop_back();
    // split the imaginary term off at the last top-level sign
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-') {
            split = k;
            break;
        }
    }
    std::string re_part, im_part;
    if (split == std::string::npos) {
        re_part = "0";
        im_part = s;
    } else {
        re_part = s.substr(0, split);
        im_part = s.substr(split);
    }
    if (im_part.empty() || im_part == "+") im_part = "1";
    else if (im_part == "-") im_part = "-1";
    else if (im_part[0] == '+') im_part = im_part.substr(1);
    bool neg = false;
    if (!im_part.empty() && im_part[0] == '-') {
        neg = true;
        im_part = im_part.substr(1);
        if (im_part.empty()) im_part = "1";
    }
    Rat re = parse_rational(re_part.empty() ? "0" : re_part);
    Rat im = parse_rational(im_part);
    if (neg) im = -im;
    return {re, im};
}

GaussianInt parse_gaussian_int(const std::string& s) {
    GaussianRat x = parse_gaussian_rational(s);
    if (x.re.get_den() != 1 || x.im.get_den() != 1)
        throw ParseError("not a Gaussian integer: '" + s + "'");
    return {x.re.get_num(), x.im.get_num()};
}

Point parse_point(const std::string& in) {
    std::string s = strip(in);
    if (s == "O" || s == "o" || s == "inf") return Point::infinity();
    size_t comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("cannot parse point: '" + in + "'");
    return Point(parse_gaussian_rational(s.substr(0, comma)),
                 parse_gaussian_rational(s.substr(comma + 1)));
}

CurveSpec parse_curve_spec(const std::string& text) {
    std::optional<Field> field;
    std::vector<GaussianRat> coeffs;
    bool cm = false;
    std::map<std::string, Point> points;

    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("bad curve-spec line: '" + line + "'");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key == "field") {
            if (value == "Q") field = Field::Q;
            else if (value == "Qi") field = Field::Qi;
            else throw ParseError("field must be Q or Qi");
        } else if (key == "a") {
            std::istringstream vs(value);
            std::string item;
            while (std::getline(vs, item, ',')) coeffs.push_back(parse_gaussian_rational(item));
            if (coeffs.size() != 5) throw ParseError("a= needs exactly a1,a2,a3,a4,a6");
        } else if (key == "cm") {
            cm = value == "true" || value == "1";
        } else if (key.rfind("point ", 0) == 0) {
            std::string name = strip(key.substr(6));
            if (name.empty()) throw ParseError("point line without a name");
            points.emplace(name, parse_point(value));
        } else {
            throw ParseError("unknown curve-spec key: '" + key + "'");
        }
    }
    if (!field) throw ParseError("curve spec missing field=");
    if (coeffs.size() != 5) throw ParseError("curve spec missing a=");
    CurveSpec spec{Curve::make(*field, coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4], cm),
                   std::move(points)};
    for (const auto& [name, pt] : spec.points) {
        if (!spec.curve.contains(pt))
            throw ParseError("named point '" + name + "' is not on the curve");
    }
    return spec;
}

CurveSpec load_curve_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open curve file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_curve_spec(buf.str());
}

std::string to_string(const Point& R) {
    if (R.inf) return "O";
    return to_string(R.x) + "," + to_string(R.y);
}

}  // namespace edscm
