#pragma once

// Umbrella header for the NorLLM data-engineering and evaluation toolkit.

#include "norllm/bpe.hpp"
#include "norllm/config.hpp"
#include "norllm/corpus.hpp"
#include "norllm/csv.hpp"
#include "norllm/dedup.hpp"
#include "norllm/embedding.hpp"
#include "norllm/errors.hpp"
#include "norllm/instruct.hpp"
#include "norllm/langid.hpp"
#include "norllm/mauve.hpp"
#include "norllm/metrics.hpp"
#include "norllm/preprocess.hpp"
#include "norllm/report.hpp"
#include "norllm/reward.hpp"
#include "norllm/utf8.hpp"
