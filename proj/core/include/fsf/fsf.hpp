#pragma once

#include "fsf/config.hpp"
#include "fsf/energy.hpp"
#include "fsf/event_log.hpp"
#include "fsf/experiment.hpp"
#include "fsf/friendship.hpp"
#include "fsf/message.hpp"
#include "fsf/metrics.hpp"
#include "fsf/node.hpp"
#include "fsf/prophet.hpp"
#include "fsf/report.hpp"
#include "fsf/router.hpp"
#include "fsf/selfishness.hpp"
#include "fsf/simulator.hpp"
#include "fsf/trace.hpp"
#include "fsf/types.hpp"
#include "fsf/version.hpp"
