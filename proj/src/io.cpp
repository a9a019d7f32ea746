#include "amte/io.hpp"

#include "amte/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace amte {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::vector<double>> read_table(std::istream& is, const std::string& header,
                                            std::size_t columns)
{
    std::string line;
    if (!std::getline(is, line))
        throw InputError("empty CSV input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw InputError("unexpected CSV header '" + line + "', expected '" + header + "'");
    std::vector<std::vector<double>> cols(columns);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',')) {
            if (c >= columns)
                throw InputError("too many columns on line " + std::to_string(lineno));
            double value = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
                throw InputError("bad number '" + cell + "' on line " + std::to_string(lineno));
            cols[c++].push_back(value);
        }
        if (c != columns)
            throw InputError("too few columns on line " + std::to_string(lineno));
    }
    return cols;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw InputError("cannot write " + path);
    return os;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw InputError("cannot read " + path);
    return is;
}

}  // namespace

void write_profile_csv(std::ostream& os, const RadialProfile& p)
{
    os << "r,v,u\n";
    for (std::size_t i = 0; i < p.r.size(); ++i)
        os << format_double(p.r[i]) << ',' << format_double(p.v[i]) << ',' << format_double(p.u[i])
           << '\n';
}

void write_profile_csv(const std::string& path, const RadialProfile& p)
{
    auto os = open_out(path);
    write_profile_csv(os, p);
}

RadialProfile read_profile_csv(std::istream& is, int n)
{
    auto cols = read_table(is, "r,v,u", 3);
    RadialProfile p;
    p.r = std::move(cols[0]);
    p.v = std::move(cols[1]);
    p.u = std::move(cols[2]);
    p.n = n;
    return p;
}

RadialProfile read_profile_csv(const std::string& path, int n)
{
    auto is = open_in(path);
    return read_profile_csv(is, n);
}

void write_curve_csv(std::ostream& os, const PhaseCurve& c)
{
    os << "eta,zeta,I\n";
    for (const auto& s : c.samples)
        os << format_double(s.eta) << ',' << format_double(s.zeta) << ',' << format_double(s.I)
           << '\n';
}

void write_curve_csv(const std::string& path, const PhaseCurve& c)
{
    auto os = open_out(path);
    write_curve_csv(os, c);
}

PhaseCurve read_curve_csv(std::istream& is)
{
    auto cols = read_table(is, "eta,zeta,I", 3);
    PhaseCurve c;
    for (std::size_t i = 0; i < cols[0].size(); ++i)
        c.samples.push_back({cols[0][i], cols[1][i], cols[2][i]});
    if (!c.samples.empty())
        c.eta_max = c.samples.back().eta;
    return c;
}

PhaseCurve read_curve_csv(const std::string& path)
{
    auto is = open_in(path);
    return read_curve_csv(is);
}

}  // namespace amte
