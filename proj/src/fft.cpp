// SPDX-License-Identifier: Apache-2.0

#include "fqam/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace fqam {
namespace {

// FFTW planning is not thread-safe; execution on caller buffers is.
std::mutex g_plan_mutex;
std::map<std::pair<int, int>, fftw_plan>& plan_cache()
{
    static std::map<std::pair<int, int>, fftw_plan> cache;
    return cache;
}

fftw_plan plan_for(int n, int sign)
{
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_pair(n, sign);
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    std::vector<cplx> probe(static_cast<std::size_t>(n));
    // FFTW_UNALIGNED: plans must accept whatever buffers std::vector hands us.
    fftw_plan p = fftw_plan_dft_1d(n,
                                   reinterpret_cast<fftw_complex*>(probe.data()),
                                   reinterpret_cast<fftw_complex*>(probe.data()),
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

void run(std::vector<cplx>& data, int sign)
{
    if (data.empty())
        return;
    fftw_plan p = plan_for(static_cast<int>(data.size()), sign);
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

} // namespace

void fft_forward(std::vector<cplx>& data) { run(data, FFTW_FORWARD); }
void fft_inverse(std::vector<cplx>& data) { run(data, FFTW_BACKWARD); }

} // namespace fqam
