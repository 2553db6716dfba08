#include <cstdio>
#include <filesystem>
#include <ostream>

#include "bwslex/composition.hpp"
#include "bwslex/error.hpp"
#include "text_io.hpp"

namespace bwslex {

namespace {

std::string fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

void write_rows(const std::vector<GroupImpactRow>& rows, const std::filesystem::path& path) {
  detail::OutputFile file(path);
  auto& out = file.stream();
  out << "group\tpolarity\tavg_diff\tn_pairs\tn_up\tn_down\n";
  for (const auto& r : rows) {
    out << r.group << '\t' << to_string(r.polarity) << '\t' << fixed(r.avg_diff, 3) << '\t' << r.n_pairs << '\t'
        << r.n_up << '\t' << r.n_down << '\n';
  }
  file.close();
}

std::vector<GroupImpactRow> select(const std::vector<GroupImpactRow>& rows, bool categories,
                                   std::optional<ModifierCategory> category = std::nullopt) {
  std::vector<GroupImpactRow> out;
  for (const auto& r : rows)
    if (r.is_category == categories && (!category || r.category == *category)) out.push_back(r);
  return out;
}

void text_table(std::ostream& out, const std::string& title, const std::vector<GroupImpactRow>& rows) {
  out << title << '\n';
  char buf[200];
  std::snprintf(buf, sizeof buf, "  %-22s %-12s %9s %8s %6s %6s %7s\n", "group", "polarity", "avg_diff", "n_pairs",
                "up", "down", "within");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "  %-22s %-12s %9s %8zu %6zu %6zu %7zu\n", r.group.c_str(),
                  std::string(to_string(r.polarity)).c_str(), fixed(r.avg_diff, 3).c_str(), r.n_pairs, r.n_up,
                  r.n_down, r.n_within());
    out << buf;
  }
  out << '\n';
}

}  // namespace

void emit_report(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const struct {
    ModifierCategory category;
    const char* stem;
  } tables[] = {{ModifierCategory::negator, "negators"},
                {ModifierCategory::modal, "modals"},
                {ModifierCategory::degree_adverb, "degree_adverbs"}};

  write_rows(select(report.rows, true), dir / "group_impact.tsv");
  for (const auto& t : tables) {
    write_rows(select(report.rows, false, t.category), dir / (std::string(t.stem) + ".tsv"));
    write_rows(select(report.single_entry_rows, false, t.category), dir / (std::string(t.stem) + "_single.tsv"));
  }

  {
    detail::OutputFile file(dir / "shift_fits.tsv");
    auto& out = file.stream();
    out << "scope\tpolarity\tgroup\tb\tmae\trmse\tn\n";
    for (const auto& f : report.shift_fits) {
      out << f.scope << '\t' << f.polarity << '\t' << f.group << '\t' << fixed(f.b, 6) << '\t' << fixed(f.mae, 6)
          << '\t' << fixed(f.rmse, 6) << '\t' << f.n << '\n';
    }
    file.close();
  }

  {
    detail::OutputFile file(dir / "scatter.tsv");
    auto& out = file.stream();
    out << "content_score\tphrase_score\tmodifier_key\tcategory\n";
    for (const auto& p : report.pairs) {
      out << fixed(p.content_score, 3) << '\t' << fixed(p.phrase_score, 3) << '\t' << p.modifier_key << '\t'
          << to_string(p.category) << '\n';
    }
    file.close();
  }

  detail::OutputFile file(dir / "report.txt");
  auto& out = file.stream();
  out << "Modifier impact analysis\n"
      << "  pairs analysed: " << report.pairs.size() << "\n"
      << "  least perceptible difference: " << fixed(report.options.lpd, 3) << "\n"
      << "  polarity threshold: +-" << fixed(report.options.pos_threshold, 3) << "\n"
      << "  minimum pairs per modifier row: " << report.options.min_pairs << "\n\n";
  out << "'within' counts pairs whose difference is smaller than the least perceptible difference.\n"
      << "Degree-adverb rows report the mean absolute difference.\n\n";
  text_table(out, "Modifier groups", select(report.rows, true));
  for (const auto& t : tables) text_table(out, std::string("Modifiers: ") + t.stem, select(report.rows, false, t.category));
  for (const auto& t : tables) {
    text_table(out, std::string("Modifiers (single-entry chains): ") + t.stem,
               select(report.single_entry_rows, false, t.category));
  }

  out << "Reversing polarity (negators): phrase = -content\n";
  for (const auto& [label, s] : report.reversal) {
    out << "  " << label << ": n=" << s.n << " mae=" << fixed(s.mae, 3) << " rmse=" << fixed(s.rmse, 3) << '\n';
  }
  out << "\nFixed shift: phrase = content - sign(content) * b\n";
  for (const auto& f : report.shift_fits) {
    if (f.scope == "modifier") continue;
    out << "  " << f.scope << ' ' << f.polarity << ' ' << f.group << ": b=" << fixed(f.b, 3)
        << " mae=" << fixed(f.mae, 3) << " rmse=" << fixed(f.rmse, 3) << " n=" << f.n << '\n';
  }
  out << "\nGroup lines (OLS, phrase on content)\n";
  for (const auto& [label, line] : report.group_lines) {
    out << "  " << label << ": phrase = " << fixed(line.intercept, 3) << " + " << fixed(line.slope, 3)
        << " * content\n";
  }
  if (!report.diagnostics.empty()) {
    out << "\nDiagnostics\n";
    for (const auto& d : report.diagnostics) out << "  " << d << '\n';
  }
  file.close();
}

}  // namespace bwslex
