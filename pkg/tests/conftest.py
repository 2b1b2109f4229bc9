"""pytest 公共配置: 把仓库根目录加入导入路径"""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
