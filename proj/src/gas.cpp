// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/gas.hpp"

namespace minicc::gas
{
int64_t memory_total(int64_t words)
{
    return memory_word * words + (words * words) / 512;
}

int64_t memory_expansion(int64_t old_words, int64_t new_words)
{
    if (new_words <= old_words)
        return 0;
    return memory_total(new_words) - memory_total(old_words);
}

int64_t words_for_bytes(int64_t bytes)
{
    return (bytes + 31) / 32;
}

int64_t sha3_cost(int64_t data_bytes)
{
    return sha3_base + sha3_word * words_for_bytes(data_bytes);
}

int64_t log_cost(int64_t n_topics, int64_t data_bytes)
{
    return log_base + log_topic * n_topics + log_byte * data_bytes;
}

int64_t sstore_cost(bool current_zero, bool new_zero)
{
    return (current_zero && !new_zero) ? sset : sreset;
}

int64_t codecopy_cost(int64_t size_bytes)
{
    return verylow + copy_word * words_for_bytes(size_bytes);
}

namespace bound
{
int64_t method_entry(int64_t n_methods, int64_t n_args)
{
    return method_entry_fixed + method_entry_per_method * n_methods +
           method_entry_per_arg * n_args;
}

int64_t deploy(int64_t n_source_nodes)
{
    return deploy_fixed + deploy_per_node * n_source_nodes;
}

int64_t log(int64_t n_topics, int64_t n_data)
{
    return log_fixed + log_topic * n_topics + log_data * n_data;
}
}  // namespace bound

}  // namespace minicc::gas
