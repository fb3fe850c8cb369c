#include "roadfield/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "roadfield/errors.hpp"

namespace roadfield {

namespace fs = std::filesystem;

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void atomic_write(const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw solver_error("cannot open for write: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw solver_error("short write: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw solver_error("rename failed for " + path.string() + ": " + ec.message());
}

void write_csv(const fs::path& path, const PlotTable& table,
               const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const auto& c : comments) out << "# " << c << "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
        out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << format_full(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
    atomic_write(path, out.str());
}

void emit_plot_bundle(const fs::path& out_dir, const std::string& stem,
                      const PlotTable& table, PlotStyle style, double reference) {
    if (table.rows.empty()) throw validation_error("emit_plot_bundle: empty table");
    if (table.columns.size() < 2)
        throw validation_error("emit_plot_bundle: need at least two columns");

    std::ostringstream dat;
    dat << "#";
    for (const auto& c : table.columns) dat << " " << c;
    dat << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) dat << (i ? " " : "") << format_full(row[i]);
        dat << "\n";
    }
    const std::string dat_name = stem + ".dat";
    atomic_write(out_dir / dat_name, dat.str());

    std::ostringstream gp;
    gp << "set terminal pngcairo size 900,600\n";
    gp << "set output '" << stem << ".png'\n";
    gp << "set xlabel '" << table.columns[0] << "'\n";
    if (style == PlotStyle::curves_overlay) {
        gp << "set key top right\n";
        gp << "plot";
        for (size_t i = 1; i < table.columns.size(); ++i) {
            gp << (i > 1 ? "," : "") << " '" << dat_name << "' using 1:" << (i + 1)
               << " with lines title '" << table.columns[i] << "'";
        }
        gp << "\n";
    } else {
        gp << "set logscale x\n";
        gp << "set key bottom right\n";
        gp << "plot '" << dat_name << "' using 1:2 with linespoints title '"
           << table.columns[1] << "'";
        gp << ", " << format_full(reference) << " with lines dt 2 title 'limit'";
        gp << "\n";
    }
    atomic_write(out_dir / (stem + ".gp"), gp.str());
}

}  // namespace roadfield
