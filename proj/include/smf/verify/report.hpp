#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smf/verify/verify.hpp"

namespace smf
{
    enum class ReportFormat
    {
        Text,
        Json
    };

    /// One line of the symmetric-square prime table: "r t ell dim".
    struct Sym2Entry
    {
        int r = 0, t = 0;
        Integer ell;
        long dim = 0;
    };

    /// Reads whitespace-separated "r t ell dim" lines; '#' starts a comment.
    inline std::vector<Sym2Entry> parse_sym2_table(std::istream &in)
    {
        std::vector<Sym2Entry> out;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            std::istringstream ss(line);
            std::string r, t, ell, dim;
            if (!(ss >> r))
                continue;
            if (!(ss >> t >> ell >> dim))
                throw PreconditionError("sym2 table line " + std::to_string(lineno) + ": expected 'r t ell dim'");
            Sym2Entry e{std::stoi(r), std::stoi(t), Integer(ell), std::stol(dim)};
            if (e.t != 2 * e.r - 4)
                throw PreconditionError("sym2 table line " + std::to_string(lineno) + ": t must equal 2r - 4");
            out.push_back(e);
        }
        return out;
    }

    inline std::vector<Sym2Entry> load_sym2_table(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw PreconditionError("cannot open sym2 table: " + path);
        return parse_sym2_table(in);
    }

    /// Primes listed for weight r.
    inline std::vector<Integer> sym2_primes_for(const std::vector<Sym2Entry> &table, int r)
    {
        std::vector<Integer> out;
        for (const auto &e : table)
            if (e.r == r)
                out.push_back(e.ell);
        return out;
    }

    namespace detail
    {
        template <class Set>
        std::string join_set(const Set &s)
        {
            std::string out = "{";
            bool first = true;
            for (const auto &x : s)
            {
                if (!first)
                    out += ", ";
                first = false;
                out += x.get_str();
            }
            return out + "}";
        }

        inline nlohmann::json set_json(const std::set<Integer> &s)
        {
            auto a = nlohmann::json::array();
            for (const auto &x : s)
                a.push_back(x.get_str());
            return a;
        }

        inline nlohmann::json row_json(const PDeltaOutcome &row)
        {
            nlohmann::json j{{"p_delta", row.q},
                             {"p", row.p},
                             {"delta", row.delta},
                             {"mu_f", row.mu_f.to_string()},
                             {"mu_F", row.mu_F.to_string()},
                             {"rhs", row.rhs.to_string()},
                             {"m", row.m.to_string()},
                             {"M", row.M.to_string()},
                             {"roots_m", set_json(row.roots_m)},
                             {"roots_M", set_json(row.roots_M)},
                             {"residues_available", row.residues_available},
                             {"residue_rhs", row.residues_available ? nlohmann::json(row.residue_rhs.get_str()) : nlohmann::json(nullptr)},
                             {"residue_F", row.residues_available ? nlohmann::json(row.residue_F.get_str()) : nlohmann::json(nullptr)},
                             {"global_match", row.global_match},
                             {"per_p_delta_match", row.per_pdelta_match},
                             {"via_cube_reduction", row.via_cube_reduction}};
            if (row.certificate)
                j["certificate"] = {{"relation", row.certificate->relation},
                                    {"residual", row.certificate->residual},
                                    {"steps", row.certificate->steps},
                                    {"valid", row.certificate->valid}};
            return j;
        }
    } // namespace detail

    inline nlohmann::json report_json(const VerificationReport &rep)
    {
        const auto &c = rep.congruence;
        nlohmann::json j{{"kind", to_string(c.kind)},
                         {"r", c.r},
                         {"t", c.t},
                         {"k", c.k},
                         {"j", c.j},
                         {"ell", c.ell == 0 ? nlohmann::json(nullptr) : nlohmann::json(c.ell.get_str())},
                         {"s", c.s},
                         {"p_delta_list", c.p_delta_list},
                         {"ordinary", to_string(c.ordinary)},
                         {"cusp_dimension", rep.cusp_dimension},
                         {"verdict", rep.verdict()},
                         {"vacuous", rep.vacuous},
                         {"global_pass", rep.pass},
                         {"per_p_delta_pass", rep.per_pdelta_pass},
                         {"warnings", rep.warnings}};
        j["matched_candidate"] = rep.matched ? nlohmann::json(*rep.matched) : nlohmann::json(nullptr);
        auto cands = nlohmann::json::array();
        for (const auto &cand : rep.candidates)
        {
            nlohmann::json cj{{"orbit_f", cand.orbit_f},
                              {"system_F", cand.system_F},
                              {"field_f", cand.field_f.to_string()},
                              {"field_F", cand.field_F.to_string()},
                              {"field_roots_f", detail::set_json(cand.field_roots_f)},
                              {"field_roots_F", detail::set_json(cand.field_roots_F)},
                              {"global_pass", cand.global_pass},
                              {"per_p_delta_pass", cand.per_pdelta_pass}};
            cj["root_pair"] = cand.root_pair ? nlohmann::json::array({cand.root_pair->first.get_str(), cand.root_pair->second.get_str()})
                                             : nlohmann::json(nullptr);
            auto rows = nlohmann::json::array();
            for (const auto &row : cand.rows)
                rows.push_back(detail::row_json(row));
            cj["rows"] = rows;
            cands.push_back(cj);
        }
        j["candidates"] = cands;
        return j;
    }

    /// Deterministic rendering: a summary row (r, t, ell, (k,j), dim, verdict) followed by the per-candidate evidence.
    inline std::string emit_report(const VerificationReport &rep, ReportFormat format)
    {
        if (format == ReportFormat::Json)
            return report_json(rep).dump(2) + "\n";
        const auto &c = rep.congruence;
        std::ostringstream os;
        os << "kind " << to_string(c.kind) << "  r " << c.r << "  t " << c.t << "  ell " << (c.ell == 0 ? std::string("none") : c.ell.get_str()) << "  (k,j) (" << c.k << "," << c.j
           << ")  dim " << rep.cusp_dimension << "  ordinary " << to_string(c.ordinary) << "  verdict " << rep.verdict() << "\n";
        for (const auto &w : rep.warnings)
            os << "  warning: " << w << "\n";
        for (size_t i = 0; i < rep.candidates.size(); ++i)
        {
            const auto &cand = rep.candidates[i];
            os << "  candidate " << i << ": f orbit " << cand.orbit_f << " [" << cand.field_f << "], F system " << cand.system_F << " ["
               << cand.field_F << "]\n";
            os << "    roots mod ell: f " << detail::join_set(cand.field_roots_f) << ", F " << detail::join_set(cand.field_roots_F) << "\n";
            if (cand.root_pair)
                os << "    root pair (" << cand.root_pair->first << ", " << cand.root_pair->second << ")";
            else
                os << "    no consistent root pair";
            os << "  global " << (cand.global_pass ? "PASS" : "FAIL") << "  per-p^delta " << (cand.per_pdelta_pass ? "PASS" : "FAIL")
               << "\n";
            for (const auto &row : cand.rows)
            {
                os << "    p^delta " << row.q << (row.via_cube_reduction ? " (cube)" : "") << ": m = " << row.m << ", M = " << row.M
                   << "; roots " << detail::join_set(row.roots_m) << " / " << detail::join_set(row.roots_M);
                if (row.residues_available)
                    os << "; residues " << row.residue_rhs << " vs " << row.residue_F << (row.global_match ? " ok" : " UNMATCHED") << "\n";
                else
                    os << "; no roots mod ell, UNMATCHED\n";
                if (row.certificate)
                    os << "      certificate [" << row.certificate->relation << "] residual " << row.certificate->residual
                       << (row.certificate->valid ? " valid" : " INVALID") << "\n";
            }
        }
        return os.str();
    }
} // namespace smf
