#pragma once

// Umbrella for the offline library. The HTTP backend lives in
// comgpt/http_backend.hpp and is included only by code that links a TLS
// stack.

#include "comgpt/cache.hpp"
#include "comgpt/encoding.hpp"
#include "comgpt/evaluation.hpp"
#include "comgpt/expansion.hpp"
#include "comgpt/experiment.hpp"
#include "comgpt/graph.hpp"
#include "comgpt/hash.hpp"
#include "comgpt/oracle.hpp"
#include "comgpt/pipeline.hpp"
#include "comgpt/prompts.hpp"
#include "comgpt/scoring.hpp"
