#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qtri/identities.hpp"

namespace qtri {

/// Verifies every instance on up to `jobs` worker threads and hands the
/// reports to `sink` in input order as soon as each prefix is complete.
/// Instances must already be normalized; computation errors become failing
/// reports with `error` set.
void verify_all(const std::vector<IdentityInstance>& instances, unsigned jobs,
                const std::function<void(std::size_t, const VerificationReport&)>& sink);

/// verify_identity that turns a thrown Error into a failing report.
VerificationReport verify_captured(const IdentityInstance& instance);

/// Default worker count: QTRI_JOBS if set and positive, else hardware threads.
unsigned default_jobs();

}  // namespace qtri
