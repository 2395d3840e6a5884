#pragma once

#include <string>
#include <vector>

#include "smf/algebra/scalar.hpp"

namespace smf
{
    /// Exit statuses shared by every command.
    enum ExitCode : int
    {
        kExitOk = 0,
        kExitFailure = 1,
        kExitCongruenceFail = 2
    };

    /// Run configuration; defaults are the desk-scale truncation.
    struct RunConfig
    {
        long disc_bound = 3000;
        long singular_bound = 750;
        long precision_bits = 256;
        int threads = 1;
        std::string cache_dir = "smf-cache";
        std::vector<long> p_delta_list{2, 3, 4, 5, 7, 8, 9};
        std::string sym2_table;

        void validate() const
        {
            if (disc_bound < 3)
                throw PreconditionError("config: disc_bound must be at least 3");
            if (singular_bound < 1)
                throw PreconditionError("config: singular_bound must be positive");
            if (precision_bits < 64)
                throw PreconditionError("config: precision_bits must be at least 64");
            if (threads < 1)
                throw PreconditionError("config: threads must be positive");
            if (cache_dir.empty())
                throw PreconditionError("config: cache_dir must not be empty");
        }
    };
} // namespace smf
