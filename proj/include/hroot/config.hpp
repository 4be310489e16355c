#pragma once

namespace hroot {

// Resource budgets.  Exceeding any of them raises degree_budget_exceeded or
// bound_exceeded; results are never silently truncated.
struct Budgets {
    int max_split_degree = 24;          // absolute degree cap for any constructed field
    long long relation_bound = 1 << 20; // exponent box within which relation lattices are saturated
    long long factor_bound = 1000000;   // trial-division limit for integer factorizations
    int cert_primes = 25;               // number of rational primes scanned for a certificate
    long long cert_period_cap = 1000000; // reduced sequences longer than this are skipped
    long max_precision_bits = 8192;     // interval refinement ceiling in the relation search
};

} // namespace hroot
