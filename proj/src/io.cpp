#include "vcglearn/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace vcglearn {

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw InputError("failed to format double");
  return std::string(buffer, ptr);
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw InputError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("failed to move " + tmp.string() + " into place: " + ec.message());
}

std::string aggregate_curves_csv(const AggregateCurves& curves) {
  const int n = static_cast<int>(curves.agent.size());
  std::string out;
  out.reserve(64 * (curves.horizon + 1));
  out += "t,R_T,R_a,R_mech,R_max";
  for (int i = 0; i < n; ++i) out += ",R_agent_" + std::to_string(i + 1);
  out += ",R_T_se,R_a_se,R_mech_se,R_max_se";
  for (int i = 0; i < n; ++i) out += ",R_agent_" + std::to_string(i + 1) + "_se";
  out += "\n";
  for (std::int64_t t = 0; t < curves.horizon; ++t) {
    out += std::to_string(t + 1);
    out += ',';
    out += format_double(curves.welfare.mean[t]);
    out += ',';
    out += format_double(curves.agent_sum.mean[t]);
    out += ',';
    out += format_double(curves.seller.mean[t]);
    out += ',';
    out += format_double(curves.vcg_max.mean[t]);
    for (int i = 0; i < n; ++i) {
      out += ',';
      out += format_double(curves.agent[i].mean[t]);
    }
    out += ',';
    out += format_double(curves.welfare.se[t]);
    out += ',';
    out += format_double(curves.agent_sum.se[t]);
    out += ',';
    out += format_double(curves.seller.se[t]);
    out += ',';
    out += format_double(curves.vcg_max.se[t]);
    for (int i = 0; i < n; ++i) {
      out += ',';
      out += format_double(curves.agent[i].se[t]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace vcglearn
