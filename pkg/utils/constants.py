import os

UTIL_DIR = os.path.dirname(__file__)
ROOT_DIR = os.path.dirname(UTIL_DIR)
LOGS_DIR = os.path.join(ROOT_DIR, "logs")
LOG_FILE_NAME = "vibronic.log"
