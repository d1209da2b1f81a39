#include "hnm/csv.hpp"

#include "hnm/error.hpp"

#include <cstdio>
#include <fstream>

namespace hnm {

namespace {

void put(std::ostream& out, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

} // namespace

std::vector<OutputRow> output_rows(const AmplitudeTrace& trace, const RateFunctions* rates)
{
    std::vector<OutputRow> rows(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const complex a = trace[k];
        OutputRow& r = rows[k];
        r.t = trace.grid().time(k);
        r.re_a = a.real();
        r.im_a = a.imag();
        r.abs2_a = r.re_a * r.re_a + r.im_a * r.im_a;
        if (rates) {
            r.gamma_t = rates->gamma[k];
            r.eps_t = rates->eps[k];
        }
    }
    return rows;
}

void write_csv(std::span<const OutputRow> rows, std::ostream& out)
{
    const bool with_rates = !rows.empty() && rows.front().gamma_t.has_value();
    out << "t,re_a,im_a,abs2_a" << (with_rates ? ",gamma,eps" : "") << '\n';
    for (const OutputRow& r : rows) {
        put(out, r.t);
        for (double v : {r.re_a, r.im_a, r.abs2_a}) {
            out << ',';
            put(out, v);
        }
        if (with_rates) {
            out << ',';
            put(out, r.gamma_t.value_or(0.0));
            out << ',';
            put(out, r.eps_t.value_or(0.0));
        }
        out << '\n';
    }
}

void write_csv(std::span<const OutputRow> rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    write_csv(rows, out);
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

} // namespace hnm
