#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/crc.hpp>

#include "smf/algebra/polynomial.hpp"
#include "smf/siegel/expansion.hpp"

namespace smf
{
    inline constexpr int kCacheFormatVersion = 1;

    /**
     * Plain-text expansion cache. Layout:
     *
     *     smf-cache 1
     *     name X10
     *     weight 10 0
     *     field 0 1
     *     bounds 3000 750
     *     records 1234
     *     checksum 1a2b3c4d
     *     1 1 1 1
     *     ...
     *
     * "field" lists the coefficient-field modulus from the constant term up.
     * Each record is "a b c" followed by one value (j = 0) or the X^2, XY, Y^2
     * components (j = 2). Rationals are written num/den in lowest terms, integers
     * without a denominator. The checksum is the CRC-32 of the record lines.
     */
    struct CacheFile
    {
        int version = kCacheFormatVersion;
        std::string name;
        int k = 0, j = 0;
        RationalPolynomial modulus{Rational(0), Rational(1)};
        long disc_bound = 0, singular_bound = 0;
        std::vector<std::pair<BQF, CoeffValue<Rational>>> records;

        friend bool operator==(const CacheFile &a, const CacheFile &b)
        {
            return a.version == b.version && a.name == b.name && a.k == b.k && a.j == b.j && a.modulus == b.modulus &&
                   a.disc_bound == b.disc_bound && a.singular_bound == b.singular_bound && a.records == b.records;
        }
    };

    class CacheFormatError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline CacheFile cache_from_expansion(const std::string &name, const SiegelExpansion<Rational> &F)
    {
        CacheFile out;
        out.name = name;
        out.k = F.k();
        out.j = F.j();
        out.disc_bound = F.disc_bound();
        out.singular_bound = F.singular_bound();
        for (const BQF &key : F.keys())
            out.records.emplace_back(key, F.stored(key));
        return out;
    }

    inline SiegelExpansion<Rational> expansion_from_cache(const CacheFile &c)
    {
        SiegelExpansion<Rational> F(c.k, c.j, c.disc_bound, c.singular_bound);
        for (const auto &[key, value] : c.records)
            F.set(key, value);
        return F;
    }

    namespace detail
    {
        inline std::string cache_body(const CacheFile &c)
        {
            std::vector<std::pair<BQF, CoeffValue<Rational>>> sorted = c.records;
            std::stable_sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y)
                             { return CanonicalKeyLess{}(x.first, y.first); });
            std::string body;
            for (const auto &[key, value] : sorted)
            {
                body += std::to_string(key.a) + " " + std::to_string(key.b) + " " + std::to_string(key.c);
                for (size_t i = 0; i < value.components(); ++i)
                    body += " " + value.v[i].get_str();
                body += "\n";
            }
            return body;
        }

        inline std::string crc_hex(const std::string &s)
        {
            boost::crc_32_type crc;
            crc.process_bytes(s.data(), s.size());
            std::ostringstream os;
            os << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
            return os.str();
        }

        inline Rational parse_rational(const std::string &s)
        {
            Rational q;
            if (q.set_str(s, 10) != 0)
                throw CacheFormatError("cache: bad rational '" + s + "'");
            Rational canon = q;
            canon.canonicalize();
            if (canon.get_num() != q.get_num() || canon.get_den() != q.get_den() || q.get_den() <= 0)
                throw CacheFormatError("cache: rational '" + s + "' is not in lowest terms");
            return q;
        }

        /// Reads "tag v1 v2 ..." and returns the values.
        inline std::vector<std::string> expect_line(std::istream &in, const std::string &tag)
        {
            std::string line;
            if (!std::getline(in, line))
                throw CacheFormatError("cache: missing '" + tag + "' line");
            std::istringstream ss(line);
            std::string got;
            ss >> got;
            if (got != tag)
                throw CacheFormatError("cache: expected '" + tag + "', found '" + got + "'");
            std::vector<std::string> out;
            for (std::string w; ss >> w;)
                out.push_back(w);
            return out;
        }

        /// Advisory lock on "<path>.lock", released on destruction.
        class FileLock
        {
        public:
            FileLock(const std::filesystem::path &path, bool exclusive)
            {
                auto lock_path = path;
                lock_path += ".lock";
                fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
                if (fd_ < 0)
                    throw std::runtime_error("cache: cannot open lock file " + lock_path.string());
                if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0)
                {
                    ::close(fd_);
                    throw std::runtime_error("cache: cannot lock " + lock_path.string());
                }
            }
            FileLock(const FileLock &) = delete;
            FileLock &operator=(const FileLock &) = delete;
            ~FileLock()
            {
                ::flock(fd_, LOCK_UN);
                ::close(fd_);
            }

        private:
            int fd_ = -1;
        };
    } // namespace detail

    inline void write_cache(std::ostream &os, const CacheFile &c)
    {
        std::string body = detail::cache_body(c);
        os << "smf-cache " << c.version << "\n";
        os << "name " << c.name << "\n";
        os << "weight " << c.k << " " << c.j << "\n";
        os << "field";
        for (const auto &coef : c.modulus.coefficients())
            os << " " << coef.get_str();
        os << "\n";
        os << "bounds " << c.disc_bound << " " << c.singular_bound << "\n";
        os << "records " << c.records.size() << "\n";
        os << "checksum " << detail::crc_hex(body) << "\n";
        os << body;
    }

    inline std::string cache_to_string(const CacheFile &c)
    {
        std::ostringstream os;
        write_cache(os, c);
        return os.str();
    }

    /// Parses and validates a cache; throws CacheFormatError on any inconsistency, including checksum mismatch.
    inline CacheFile read_cache(std::istream &in)
    {
        CacheFile c;
        try
        {
            auto v = detail::expect_line(in, "smf-cache");
            if (v.size() != 1 || std::stoi(v[0]) != kCacheFormatVersion)
                throw CacheFormatError("cache: unsupported format version");
            auto name = detail::expect_line(in, "name");
            if (name.size() != 1)
                throw CacheFormatError("cache: bad name line");
            c.name = name[0];
            auto w = detail::expect_line(in, "weight");
            if (w.size() != 2)
                throw CacheFormatError("cache: bad weight line");
            c.k = std::stoi(w[0]);
            c.j = std::stoi(w[1]);
            if (c.j != 0 && c.j != 2)
                throw CacheFormatError("cache: j must be 0 or 2");
            std::vector<Rational> mod;
            for (const auto &s : detail::expect_line(in, "field"))
                mod.push_back(detail::parse_rational(s));
            c.modulus = RationalPolynomial(mod);
            auto b = detail::expect_line(in, "bounds");
            if (b.size() != 2)
                throw CacheFormatError("cache: bad bounds line");
            c.disc_bound = std::stol(b[0]);
            c.singular_bound = std::stol(b[1]);
            auto n = detail::expect_line(in, "records");
            auto sum = detail::expect_line(in, "checksum");
            if (n.size() != 1 || sum.size() != 1)
                throw CacheFormatError("cache: bad records/checksum line");
            size_t count = std::stoul(n[0]);
            std::string body, line;
            size_t comps = c.j == 0 ? 1 : 3;
            while (std::getline(in, line))
            {
                if (line.empty())
                    continue;
                body += line + "\n";
                std::istringstream ss(line);
                BQF key;
                if (!(ss >> key.a >> key.b >> key.c))
                    throw CacheFormatError("cache: bad record '" + line + "'");
                CoeffValue<Rational> value = CoeffValue<Rational>::zero(c.j);
                for (size_t i = 0; i < comps; ++i)
                {
                    std::string s;
                    if (!(ss >> s))
                        throw CacheFormatError("cache: short record '" + line + "'");
                    value.v[i] = detail::parse_rational(s);
                }
                if (std::string extra; ss >> extra)
                    throw CacheFormatError("cache: trailing data in record '" + line + "'");
                if (!c.records.empty() && !CanonicalKeyLess{}(c.records.back().first, key))
                    throw CacheFormatError("cache: records out of canonical order at " + key.to_string());
                c.records.emplace_back(key, value);
            }
            if (c.records.size() != count)
                throw CacheFormatError("cache: record count mismatch");
            if (detail::crc_hex(body) != sum[0])
                throw CacheFormatError("cache: checksum mismatch");
        }
        catch (const std::invalid_argument &)
        {
            throw CacheFormatError("cache: malformed number in header");
        }
        catch (const std::out_of_range &)
        {
            throw CacheFormatError("cache: number out of range in header");
        }
        return c;
    }

    inline CacheFile cache_from_string(const std::string &s)
    {
        std::istringstream in(s);
        return read_cache(in);
    }

    /// Writes atomically (temporary file plus rename) under an exclusive advisory lock.
    inline void save_cache_file(const std::filesystem::path &path, const CacheFile &c)
    {
        detail::FileLock lock(path, true);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os)
                throw std::runtime_error("cache: cannot write " + tmp.string());
            write_cache(os, c);
            if (!os.flush())
                throw std::runtime_error("cache: write failed for " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    inline CacheFile load_cache_file(const std::filesystem::path &path)
    {
        detail::FileLock lock(path, false);
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw CacheFormatError("cache: cannot open " + path.string());
        return read_cache(in);
    }
} // namespace smf
